"""
处理器基类模块 - 命令业务逻辑接口

Handler 只负责业务处理，不处理命令接收与输出。
handle 返回 Result[dict]，由 CommandReceiver 负责渲染、
写入运行记录并映射退出码。

使用方式：
    from plugins.common.handler import CommandHandler
    from plugins.common.base import Result

    class SpectrumHandler(CommandHandler):
        name = "傅里叶谱"
        command = "spectrum"
        input_args = ("fn",)
        ERROR_MESSAGES = {
            "empty_input": "No function given",
        }

        def add_arguments(self, parser):
            parser.add_argument("fn")

        def handle(self, args):
            f = load_function(args.fn)
            return self.ok({"n": f.n})

Example:
    >>> handler = SpectrumHandler()
    >>> result = handler.handle(namespace)
"""

import argparse
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Optional

from .base import InputError, Result
from ..utils.text import format_payload


class CommandHandler(ABC):
    """
    命令业务逻辑处理器基类

    子类声明元数据、注册参数并实现 handle。

    Attributes:
        name: 命令显示名称
        description: 命令描述（写入 --help）
        command: 一级命令名
        action: 二级动作名（无则为 None）
        aliases: 一级命令别名集合
        feature_name: 功能开关名
        hidden_in_help: 是否在帮助中隐藏
        formats: 文件格式说明（写入 --help 结尾）
        randomized: 是否接受 --seed/--trials
        default_trials: --trials 默认值
        input_args: 保存输入文件路径的参数名，用于运行记录摘要
        ERROR_MESSAGES: 错误类型到用户消息的映射字典

    Example:
        >>> class BlrHandler(CommandHandler):
        ...     name = "BLR 测试"
        ...     command = "test"
        ...     action = "blr"
        ...     randomized = True
    """

    # 元数据（子类配置）
    name: str = ""
    description: str = ""
    command: Optional[str] = None
    action: Optional[str] = None
    aliases: Optional[set] = None
    feature_name: Optional[str] = None
    hidden_in_help: bool = False
    formats: str = ""
    randomized: bool = False
    default_trials: int = 10_000
    input_args: tuple[str, ...] = ()

    # 错误消息映射（子类可覆盖）
    ERROR_MESSAGES: ClassVar[dict[str, str]] = {}

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """
        注册命令参数（子类按需重写）

        Args:
            parser: 本命令的子解析器
        """

    def add_sampling_arguments(self, parser: argparse.ArgumentParser) -> None:
        """注册 --seed 和 --trials"""
        parser.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
        parser.add_argument("--trials", type=int, default=self.default_trials,
                            help=f"number of trials (default: {self.default_trials})")

    @abstractmethod
    def handle(self, args: argparse.Namespace) -> Result[dict]:
        """
        处理命令（子类必须实现）

        输入错误可以直接抛出 InputError，也可以返回 self.fail(...)；
        资源超限抛出 ResourceBudgetError。

        Args:
            args: 解析后的命令行参数

        Returns:
            成功时为可 JSON 序列化的结果字典
        """

    def render(self, payload: dict[str, Any]) -> str:
        """
        将结果字典渲染为人类可读文本（可重写）

        Args:
            payload: handle 返回的结果字典

        Returns:
            多行文本
        """
        return format_payload(payload)

    def get_error_message(self, error: str, context: Optional[dict] = None) -> str:
        """
        根据错误类型获取用户友好的错误消息

        Args:
            error: 错误类型或错误信息
            context: 上下文信息（用于格式化错误消息）

        Returns:
            用户友好的错误消息

        Example:
            >>> class MyHandler(CommandHandler):
            ...     ERROR_MESSAGES = {"bad_edge": "Edge {edge} is empty"}
            >>> MyHandler().get_error_message("bad_edge", {"edge": 3})
            'Edge 3 is empty'
        """
        message = self.ERROR_MESSAGES.get(error)
        if message is None:
            return f"Operation failed: {error}"

        if context:
            try:
                return message.format(**context)
            except (KeyError, ValueError):
                pass

        return message

    def ok(self, value: Any = None) -> Result:
        """创建成功的 Result"""
        return Result.ok(value)

    def fail(self, error: str, **context: Any) -> Result:
        """
        按错误类型创建失败的 Result

        Example:
            >>> return self.fail("bad_edge", edge=3)
        """
        return Result.err(self.get_error_message(error, context))

    def require(self, condition: bool, error: str, **context: Any) -> None:
        """
        条件不成立时抛出 InputError

        Example:
            >>> self.require(0 <= args.eps <= 1, "bad_noise", eps=args.eps)
        """
        if not condition:
            raise InputError(self.get_error_message(error, context))
