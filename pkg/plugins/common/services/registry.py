"""
命令注册表服务模块 - 命令元数据管理

服务层 - 收集和管理所有命令处理器的元数据

CommandReceiver 在插件导入时自动注册，命令行解析器
由注册表动态生成。一级命令（如 test）下可挂多个动作
（如 blr、graph），没有动作的命令直接执行。

使用方式:
    >>> from plugins.common.services import CommandRegistry
    >>> registry = CommandRegistry.get_instance()
    >>>
    >>> # 按命令分组
    >>> for command, infos in registry.get_groups().items():
    ...     print(command, [i.action for i in infos])
    >>>
    >>> # 按路径查找
    >>> info = registry.get_command("test", "blr")
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional, Set, Tuple

from ..base import ServiceBase

if TYPE_CHECKING:
    from ..receiver import CommandReceiver


@dataclass
class CommandInfo:
    """
    命令信息数据类

    Attributes:
        name: 命令显示名称
        description: 功能描述
        command: 一级命令名
        action: 二级动作名（无则为 None）
        aliases: 一级命令别名
        feature_name: 功能开关名
        usage: 使用说明
        formats: 文件格式说明（写入 --help 结尾）
        hidden: 是否在帮助中隐藏
        receiver: 命令接收器实例

    Example:
        >>> info = CommandInfo(name="BLR 测试", description="...",
        ...                    command="test", action="blr")
    """
    name: str
    description: str
    command: str
    action: Optional[str] = None
    aliases: Set[str] = field(default_factory=set)
    feature_name: Optional[str] = None
    usage: str = ""
    formats: str = ""
    hidden: bool = False
    receiver: Optional["CommandReceiver"] = None

    @property
    def path(self) -> Tuple[str, Optional[str]]:
        """(命令, 动作) 二元组"""
        return (self.command, self.action)


class CommandRegistry(ServiceBase):
    """
    命令注册表服务类

    Attributes:
        _commands: (命令, 动作) 到 CommandInfo 的映射
        _order: 注册顺序，决定帮助中的展示顺序
    """

    def __init__(self) -> None:
        super().__init__()
        self._commands: Dict[Tuple[str, Optional[str]], CommandInfo] = {}
        self._order: List[Tuple[str, Optional[str]]] = []

    def register(self, info: CommandInfo) -> None:
        """
        注册命令信息

        重复路径跳过注册。

        Args:
            info: 命令信息对象
        """
        key = info.path
        if key in self._commands:
            self.logger.debug(f"命令已注册，跳过: {key}")
            return
        self._commands[key] = info
        self._order.append(key)
        self.logger.debug(f"注册命令: {info.command} {info.action or ''}".rstrip())

    def get_command(self, command: str, action: Optional[str] = None) -> Optional[CommandInfo]:
        """
        根据路径获取命令信息

        Args:
            command: 一级命令名
            action: 二级动作名

        Returns:
            命令信息对象，未找到返回 None
        """
        return self._commands.get((command, action))

    def get_groups(self, include_hidden: bool = False) -> Dict[str, List[CommandInfo]]:
        """
        按一级命令分组（保持注册顺序）

        Returns:
            一级命令 -> 命令信息列表
        """
        groups: Dict[str, List[CommandInfo]] = {}
        for key in self._order:
            info = self._commands[key]
            if info.hidden and not include_hidden:
                continue
            groups.setdefault(info.command, []).append(info)
        return groups

    def get_command_count(self) -> int:
        """已注册命令数量"""
        return len(self._commands)
