"""
运行环境服务模块 - 进程资源信息

服务层 - 提供 CPU 核数与内存占用，用于默认线程数和运行记录

使用 psutil 获取物理 CPU 数和进程内存；psutil 不可用时
退回 os.cpu_count() 并把内存记为 -1。

使用方式:
    >>> from plugins.common.services import RuntimeMonitor
    >>> monitor = RuntimeMonitor.get_instance()
    >>> monitor.physical_cpus()
    8
    >>> monitor.snapshot()
    {'platform': 'Linux-6.1-x86_64', 'python': '3.11.6', 'rss_mb': 84.2, 'threads': 8}
"""

import os
import platform
from typing import Any

from ..base import ServiceBase
from ..config import config

try:
    import psutil
    _PSUTIL_AVAILABLE = True
except ImportError:
    psutil = None
    _PSUTIL_AVAILABLE = False


class RuntimeMonitor(ServiceBase):
    """
    运行环境服务类

    Attributes:
        _process: psutil 进程对象（不可用时为 None）
        _psutil_available: psutil 是否可用
    """

    def __init__(self) -> None:
        super().__init__()
        self._process = None
        self._psutil_available = _PSUTIL_AVAILABLE

    def initialize(self) -> None:
        if self._initialized:
            return
        if self._psutil_available:
            self._process = psutil.Process()
        self._initialized = True

    def physical_cpus(self) -> int:
        """
        物理 CPU 数

        Returns:
            至少为 1 的核数
        """
        count = None
        if self._psutil_available:
            count = psutil.cpu_count(logical=False)
        if not count:
            count = os.cpu_count()
        return max(1, count or 1)

    def rss_mb(self) -> float:
        """当前进程常驻内存（MB），不可用时为 -1"""
        self.ensure_initialized()
        if self._process is None:
            return -1.0
        return round(self._process.memory_info().rss / (1024 * 1024), 1)

    def snapshot(self) -> dict[str, Any]:
        """
        运行环境快照

        Returns:
            包含平台、Python 版本、内存和线程数的字典
        """
        return {
            "platform": platform.platform(),
            "python": platform.python_version(),
            "rss_mb": self.rss_mb(),
            "threads": config.threads or self.physical_cpus(),
        }
