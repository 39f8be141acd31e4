"""
common 模块 - 基础设施层

提供整个项目的基础功能和公共服务。

目录结构:
    base.py           - 基础层: 异常体系, ServiceBase, Result[T]
    config.py         - 配置层: ToolkitConfig
    log.py            - 日志层: loguru 配置
    handler.py        - 处理器层: CommandHandler
    receiver.py       - 接收层: CommandReceiver, build_parser, dispatch
    record.py         - 运行记录: RunRecord
    services/         - 服务实现层
        ├── registry.py     - 命令注册表
        ├── sampling.py     - 可复现并行试验
        └── system.py       - 运行环境信息

使用方式:
    # 从 common 导入常用功能
    from plugins.common import CommandHandler, CommandReceiver
    from plugins.common import Result, ServiceBase, InputError
"""

__version__ = "1.0.0"

# ========== 基础层 ==========
from .base import (
    InputError,
    ResourceBudgetError,
    Result,
    ServiceBase,
    ToolkitError,
    ensure_budget,
)

# ========== 配置层 ==========
from .config import ToolkitConfig, config

# ========== 日志层 ==========
from .log import logger, setup_logging

# ========== 处理器层 ==========
from .handler import CommandHandler

# ========== 接收层 ==========
from .receiver import (
    EXIT_BUDGET,
    EXIT_INPUT,
    EXIT_OK,
    CommandReceiver,
    build_parser,
    dispatch,
)

# ========== 运行记录 ==========
from .record import RunRecord

# ========== 服务层（常用）==========
from .services import (
    CommandInfo,
    CommandRegistry,
    RuntimeMonitor,
    Stream,
    TrialRunner,
    get_trial_runner,
    stream_generator,
)


__all__ = [
    '__version__',
    # 基础层
    'InputError',
    'ResourceBudgetError',
    'Result',
    'ServiceBase',
    'ToolkitError',
    'ensure_budget',
    # 配置层
    'ToolkitConfig',
    'config',
    # 日志层
    'logger',
    'setup_logging',
    # 处理器层
    'CommandHandler',
    # 接收层
    'EXIT_BUDGET',
    'EXIT_INPUT',
    'EXIT_OK',
    'CommandReceiver',
    'build_parser',
    'dispatch',
    # 运行记录
    'RunRecord',
    # 服务层
    'CommandInfo',
    'CommandRegistry',
    'RuntimeMonitor',
    'Stream',
    'TrialRunner',
    'get_trial_runner',
    'stream_generator',
]
