"""
状态插件

查看版本、各功能开关、计算预算与运行环境。

触发方式:
    - lowdeg status - 显示功能开关、预算与运行环境

配置:
    无特殊配置项（功能开关通过 LOWDEG_<FEATURE>_ENABLED 设置）
"""

import argparse

from plugins.common import (
    CommandHandler,
    CommandReceiver,
    CommandRegistry,
    Result,
    RuntimeMonitor,
    __version__,
    config,
)

# 预算类配置项（展示顺序）
BUDGET_FIELDS = (
    "max_exact_n",
    "gowers_budget",
    "genavg_max_nt",
    "matroid_max_rows",
    "rm2_max_n",
    "hom_max_order",
    "hom_pair_budget",
    "hom_enum_budget",
    "bound_max_n",
    "chunk_elements",
    "block_size",
)


class StatusHandler(CommandHandler):
    """状态处理器"""

    name = "状态"
    description = "show version, feature switches, exact-computation budgets and the runtime"
    command = "status"
    feature_name = None

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        payload = {
            "version": __version__,
            "commands": CommandRegistry.get_instance().get_command_count(),
        }
        for field in sorted(type(config).model_fields):
            if field.endswith("_enabled"):
                payload[f"feature.{field[:-len('_enabled')]}"] = bool(getattr(config, field))
        for field in BUDGET_FIELDS:
            payload[f"budget.{field}"] = getattr(config, field)
        for key, value in RuntimeMonitor.get_instance().snapshot().items():
            payload[f"env.{key}"] = value
        return self.ok(payload)


# 创建处理器和接收器
status_receiver = CommandReceiver(StatusHandler())
