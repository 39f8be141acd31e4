"""
services 子模块 - 服务层实现

服务列表:
    - CommandRegistry: 命令注册表
    - TrialRunner: 可复现的并行试验（分块随机流 + 线程池）
    - RuntimeMonitor: 运行环境信息（psutil）

使用方式:
    >>> from plugins.common.services import TrialRunner
    >>> runner = TrialRunner.get_instance()
"""

from .registry import CommandInfo, CommandRegistry
from .sampling import Stream, TrialKernel, TrialRunner, get_trial_runner, stream_generator
from .system import RuntimeMonitor

__all__ = [
    'CommandInfo',
    'CommandRegistry',
    'Stream',
    'TrialKernel',
    'TrialRunner',
    'get_trial_runner',
    'stream_generator',
    'RuntimeMonitor',
]
