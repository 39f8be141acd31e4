"""
命令接收器模块 - 注册命令并执行

CommandReceiver 把 Handler 注册到命令注册表；build_parser 由注册表
动态生成 argparse 解析器；dispatch 执行命令，统一处理功能开关、
输出格式、运行记录与退出码。

退出码:
    0 - 成功
    2 - 输入错误（格式错误、参数越界、文件缺失）
    3 - 资源预算超限

使用方式：
    from plugins.common.handler import CommandHandler
    from plugins.common.receiver import CommandReceiver

    class MyHandler(CommandHandler):
        name = "测试"
        command = "test"
        action = "blr"

        def handle(self, args):
            return self.ok({"acceptance": 1.0})

    # 创建接收器自动注册命令
    receiver = CommandReceiver(MyHandler())

Example:
    >>> parser = build_parser()
    >>> args = parser.parse_args(["test", "blr", "--fn", "f.tt", "--seed", "7"])
    >>> exit_code = dispatch(args)
"""

import argparse
import json
import sys
import time
from typing import Optional, TextIO

from . import __version__
from .base import InputError, ResourceBudgetError, Result
from .config import config
from .handler import CommandHandler
from .log import logger
from .record import RunRecord
from .services.registry import CommandInfo, CommandRegistry

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3


class CommandReceiver:
    """
    命令接收器

    封装功能开关检查、异常到退出码的映射、输出渲染与运行记录。
    自动将 Handler 注册到命令注册表。

    Attributes:
        _handler: 关联的 CommandHandler 实例

    Example:
        >>> receiver = CommandReceiver(BlrHandler())  # 自动注册 test blr
    """

    def __init__(self, handler: CommandHandler) -> None:
        self._handler = handler
        self._register_to_registry()

    @property
    def handler(self) -> CommandHandler:
        return self._handler

    @property
    def path(self) -> str:
        """命令路径，如 "test blr" """
        return " ".join(p for p in (self._handler.command, self._handler.action) if p)

    def _register_to_registry(self) -> None:
        info = CommandInfo(
            name=self._handler.name,
            description=self._handler.description,
            command=self._handler.command or "",
            action=self._handler.action,
            aliases=set(self._handler.aliases or ()),
            feature_name=self._handler.feature_name,
            usage=f"lowdeg {self.path}",
            formats=self._handler.formats,
            hidden=self._handler.hidden_in_help,
            receiver=self,
        )
        CommandRegistry.get_instance().register(info)

    def _check_feature(self) -> bool:
        if not self._handler.feature_name:
            return True
        return config.is_enabled(self._handler.feature_name)

    def execute(self, args: argparse.Namespace) -> Result[dict]:
        """
        执行处理器并把 InputError 转为失败结果

        ResourceBudgetError 继续向上抛出。
        """
        if not self._check_feature():
            return Result.err(f"feature '{self._handler.feature_name}' is disabled")
        try:
            return self._handler.handle(args)
        except InputError as e:
            return Result.err(str(e))

    def run(self, args: argparse.Namespace, stdout: Optional[TextIO] = None,
            stderr: Optional[TextIO] = None) -> int:
        """
        执行命令并输出结果

        Args:
            args: 解析后的命令行参数
            stdout: 结果输出流（默认 sys.stdout）
            stderr: 错误输出流（默认 sys.stderr）

        Returns:
            退出码
        """
        stdout = stdout or sys.stdout
        stderr = stderr or sys.stderr
        started = time.perf_counter()

        try:
            result = self.execute(args)
        except ResourceBudgetError as e:
            logger.warning(f"{self.path}: {e}")
            print(f"error: {e}", file=stderr)
            return EXIT_BUDGET

        if result.is_failure:
            logger.debug(f"{self.path} 失败: {result.error}")
            print(f"error: {result.error}", file=stderr)
            return EXIT_INPUT

        payload = result.unwrap()
        if getattr(args, "json", False):
            text = json.dumps(payload, sort_keys=True)
        else:
            text = self._handler.render(payload)
        print(text, file=stdout)

        wall_time = time.perf_counter() - started
        out_path = getattr(args, "out", None)
        if out_path:
            input_paths = [getattr(args, name) for name in self._handler.input_args
                           if getattr(args, name, None)]
            try:
                record = RunRecord.create(self.path, seed=getattr(args, "seed", None),
                                          input_paths=input_paths, result=payload,
                                          wall_time=wall_time)
                record.write(out_path)
            except InputError as e:
                print(f"error: {e}", file=stderr)
                return EXIT_INPUT
        logger.success(f"{self.path} 完成，用时 {wall_time:.3f}s")
        return EXIT_OK


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--json", action="store_true", help="print the result as JSON")
    parent.add_argument("--out", metavar="PATH", help="write a JSON run record to PATH")
    parent.add_argument("--threads", type=int, metavar="N", default=argparse.SUPPRESS,
                        help="worker threads (default: physical CPUs)")
    return parent


def _add_command_parser(subparsers, name: str, info: CommandInfo,
                        parent: argparse.ArgumentParser, aliases: list[str]) -> None:
    handler = info.receiver.handler
    sub = subparsers.add_parser(
        name,
        aliases=aliases,
        help=info.description,
        description=info.description,
        epilog=info.formats or None,
        parents=[parent],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    handler.add_arguments(sub)
    if handler.randomized:
        handler.add_sampling_arguments(sub)
    sub.set_defaults(_receiver=info.receiver)


def build_parser(registry: Optional[CommandRegistry] = None) -> argparse.ArgumentParser:
    """
    由注册表生成命令行解析器

    有动作的命令生成二级子命令，没有动作的命令直接挂参数。

    Returns:
        顶层 ArgumentParser
    """
    registry = registry or CommandRegistry.get_instance()
    parser = argparse.ArgumentParser(
        prog="lowdeg",
        description="Low-degree testing toolkit for Boolean functions and p-groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, metavar="N",
                        help="worker threads (default: physical CPUs)")
    parser.add_argument("--log-level", metavar="LEVEL", help="stderr log level")
    parent = _common_options()

    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True
    for command, infos in registry.get_groups(include_hidden=True).items():
        aliases = sorted(set().union(*(info.aliases for info in infos)))
        if len(infos) == 1 and infos[0].action is None:
            _add_command_parser(commands, command, infos[0], parent, aliases)
            continue
        summary = ", ".join(info.action or "" for info in infos)
        group = commands.add_parser(command, aliases=aliases, help=summary,
                                    description=f"{command}: {summary}")
        actions = group.add_subparsers(dest="action", metavar="ACTION")
        actions.required = True
        for info in infos:
            _add_command_parser(actions, info.action or "", info, parent, [])
    return parser


def dispatch(args: argparse.Namespace) -> int:
    """
    执行解析后的命令

    Args:
        args: build_parser().parse_args(...) 的结果

    Returns:
        退出码
    """
    if args.threads is not None:
        if args.threads < 1:
            print(f"error: --threads must be >= 1, got {args.threads}", file=sys.stderr)
            return EXIT_INPUT
        config.threads = args.threads
    receiver: CommandReceiver = args._receiver
    return receiver.run(args)
