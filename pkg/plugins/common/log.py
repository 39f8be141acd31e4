"""
日志模块 - loguru 日志配置

标准输出只用于结果，日志全部写到标准错误，
保证相同参数与种子的运行输出逐字节一致。

使用方式:
    >>> from plugins.common.log import logger, setup_logging
    >>> setup_logging("INFO")
    >>> logger.info("开始计算")
    >>> logger.success("计算完成")
"""

import sys

from loguru import logger

default_format: str = (
    "<g>{time:HH:mm:ss}</g> "
    "[<lvl>{level}</lvl>] "
    "<c>{extra[service]}</c> | "
    "{message}"
)

logger.configure(extra={"service": "lowdeg"})


def setup_logging(level: str = "WARNING", *, colorize: bool = False) -> int:
    """
    重新配置日志输出

    移除所有已有 sink，只保留一个写到 stderr 的 sink。

    Args:
        level: 日志级别（DEBUG/INFO/SUCCESS/WARNING/ERROR）
        colorize: 是否着色

    Returns:
        新 sink 的 id
    """
    logger.remove()
    return logger.add(sys.stderr, level=level.upper(), format=default_format, colorize=colorize)
