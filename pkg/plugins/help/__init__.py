"""
帮助插件

自动从 CommandRegistry 读取命令元数据，动态生成帮助信息。
支持查看命令列表和指定命令的详细用法。

触发方式:
    - lowdeg help - 显示所有可用命令
    - lowdeg help [命令] [动作] - 查看指定命令的详细用法

配置:
    无特殊配置项（被功能开关关闭的命令不会列出）

使用方式:
    lowdeg help test blr
"""

import argparse
from typing import Any

from plugins.common import (
    CommandHandler,
    CommandInfo,
    CommandReceiver,
    CommandRegistry,
    Result,
    config,
)
from plugins.utils.text import format_table


class HelpHandler(CommandHandler):
    """
    帮助信息处理器

    Attributes:
        name: 命令名称
        description: 功能描述
        command: 命令名称
        feature_name: 功能开关名（None 表示不受开关控制）
        ERROR_MESSAGES: 错误消息映射
    """

    name = "帮助"
    description = "list the available commands or show one command's usage"
    command = "help"
    feature_name = None

    ERROR_MESSAGES = {
        "command_not_found": "Command not found: {query}",
        "feature_disabled": "Feature is currently disabled: {query}",
        "no_features_available": "All features are currently disabled",
    }

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("topic", nargs="*", metavar="COMMAND",
                            help="command (and action) to describe")

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        registry = CommandRegistry.get_instance()
        if args.topic:
            return self._show_command_detail(registry, args.topic)
        return self._show_command_list(registry)

    def _visible(self, info: CommandInfo) -> bool:
        if info.command == self.command:
            return False
        return not info.feature_name or config.is_enabled(info.feature_name)

    def _show_command_detail(self, registry: CommandRegistry, topic: list[str]) -> Result[dict]:
        """
        显示特定命令的详细信息

        只给一级命令时，列出该命令下的全部动作。
        """
        query = " ".join(topic)
        command, action = topic[0], (topic[1] if len(topic) > 1 else None)
        infos = registry.get_groups(include_hidden=False).get(command, [])
        if action is not None:
            infos = [info for info in infos if info.action == action]
        if not infos or len(topic) > 2:
            return self.fail("command_not_found", query=query)
        infos = [info for info in infos if self._visible(info)]
        if not infos:
            return self.fail("feature_disabled", query=query)
        return self.ok({"commands": [self._describe(info, detail=True) for info in infos]})

    def _show_command_list(self, registry: CommandRegistry) -> Result[dict]:
        """显示所有可用命令"""
        entries = [
            self._describe(info, detail=False)
            for infos in registry.get_groups(include_hidden=False).values()
            for info in infos
            if self._visible(info)
        ]
        if not entries:
            return self.fail("no_features_available")
        return self.ok({"commands": entries})

    @staticmethod
    def _describe(info: CommandInfo, detail: bool) -> dict[str, Any]:
        entry = {
            "command": " ".join(p for p in info.path if p),
            "name": info.name,
            "description": info.description,
        }
        if detail:
            entry["usage"] = info.usage
            entry["aliases"] = sorted(info.aliases)
            entry["formats"] = info.formats
        return entry

    def render(self, payload: dict[str, Any]) -> str:
        entries = payload["commands"]
        if entries and "usage" in entries[0]:
            blocks = []
            for entry in entries:
                lines = [f"{entry['command']}  {entry['name']}"]
                if entry["aliases"]:
                    lines.append(f"Aliases: {', '.join(entry['aliases'])}")
                lines.append(f"Description: {entry['description']}")
                lines.append(f"Usage: {entry['usage']} [options]  (see --help)")
                if entry["formats"]:
                    lines.append("")
                    lines.append(entry["formats"])
                blocks.append("\n".join(lines))
            return "\n\n".join(blocks)
        rows = [(e["command"], e["description"]) for e in entries]
        table = format_table(rows, headers=("command", "description"))
        return f"{table}\n\nUse 'lowdeg help COMMAND [ACTION]' to view detailed usage"


# 创建处理器和接收器
help_receiver = CommandReceiver(HelpHandler())
