"""
lowdeg - 布尔函数低次测试工具箱主程序

Gowers 范数、广义平均约化、超图线性/二次性测试、RM(2) 距离、
二次解码与交换群同态测试的命令行入口。

快速开始:
    # 安装依赖
    pip install -e ".[dev]"

    # 生成函数并查看谱
    lowdeg gen bent --n 4 > bent.tt
    lowdeg spectrum --fn bent.tt
    lowdeg help

功能模块:
    - 函数与谱: spectrum, gen linear|bent|quadratic|random|noisy
    - Gowers 范数: gowers
    - 广义平均: average, reduce
    - 随机测试: test blr|graph|hypergraph-lin|hypergraph-quad|akklr
    - RM(2): rm2 distance|dicho
    - 二次解码: decode
    - 同态: hom agree|best|correct

架构说明:
    1. 插件层 (plugins/<feature>) - 功能实现与命令处理器
    2. 处理器层 (Handler) - 业务逻辑
    3. 接收层 (Receiver) - 命令注册、解析器生成与分发
    4. 服务层 (Services) - 注册表、并行试验、运行环境
    5. 基础层 (Base) - 异常、Result、单例基类
    6. 配置层 (Config) - 配置管理

Example:
    >>> import lowdeg
    >>> lowdeg.main(["gowers", "--fn", "f.tt", "--d", "3", "--exact"])
    0
"""

import importlib
import pkgutil
import sys
from pathlib import Path
from typing import Optional, Sequence

from plugins.common import EXIT_INPUT, __version__, build_parser, config, dispatch, logger, setup_logging

# 基础设施包，不是功能插件
_INFRASTRUCTURE = {"common", "utils"}
_PLUGIN_DIR = Path(__file__).parent / "plugins"


def load_plugins() -> list[str]:
    """
    加载 plugins 目录下的全部功能插件

    导入即注册: 每个插件包的 CommandReceiver 在导入时写入注册表。

    Returns:
        已加载的插件名（按名称排序）
    """
    loaded = []
    for module in sorted(pkgutil.iter_modules([str(_PLUGIN_DIR)]), key=lambda m: m.name):
        if not module.ispkg or module.name in _INFRASTRUCTURE:
            continue
        importlib.import_module(f"plugins.{module.name}")
        loaded.append(module.name)
    logger.debug(f"已加载插件: {', '.join(loaded)}")
    return loaded


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    命令行入口

    Args:
        argv: 命令行参数（默认 sys.argv[1:]）

    Returns:
        退出码（0 成功，2 输入错误，3 资源预算超限）
    """
    load_plugins()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT

    level = args.log_level or config.effective_log_level
    try:
        setup_logging(level)
    except ValueError:
        print(f"error: unknown log level '{level}'", file=sys.stderr)
        return EXIT_INPUT
    logger.debug(f"lowdeg {__version__}")
    return dispatch(args)


if __name__ == "__main__":
    sys.exit(main())
