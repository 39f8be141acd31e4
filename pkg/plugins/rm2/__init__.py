"""
RM(2) 插件 - 到二次函数的距离

小 n 下穷举全部二次多项式求精确距离；任意 n 下用三阶导数采样
判定函数离 RM(2) 远（FAR）还是近（NEAR）。

触发方式:
    - lowdeg rm2 distance --fn f.tt
    - lowdeg rm2 dicho --fn f.tt --delta 0.05 [--confidence 0.95] [--seed 1]

配置:
    LOWDEG_RM2_ENABLED=True/False        # 功能开关
    LOWDEG_RM2_MAX_N=6                   # 穷举距离的最大 n
    LOWDEG_DICHOTOMY_CONFIDENCE=0.95     # 默认置信度

使用方式:
    >>> from plugins.rm2 import dichotomy, rm2_exact_distance
    >>> rm2_exact_distance(inner_product_bent(4)).distance
    0.0
"""

import argparse

from plugins.common import CommandHandler, CommandReceiver, Result
from plugins.core import FUNCTION_FORMAT, add_function_arguments, load_function

from .dichotomy import dichotomy, dichotomy_sample_size, far_distance_bound
from .distance import rm2_correlation_bound_check, rm2_exact_distance, u3_product_invariance
from .models import FAR, NEAR, DichotomyVerdict, NearestQuadratic


class DistanceHandler(CommandHandler):
    """精确距离处理器"""

    name = "RM(2) 距离"
    description = "exact distance to the nearest quadratic (exhaustive, small n)"
    command = "rm2"
    action = "distance"
    feature_name = "rm2"
    formats = FUNCTION_FORMAT
    input_args = ("fn",)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        f = load_function(args)
        nearest = rm2_exact_distance(f)
        payload = {"n": f.n}
        payload.update(nearest.to_dict())
        return self.ok(payload)


class DichotomyHandler(CommandHandler):
    """远/近二分处理器"""

    name = "RM(2) 二分"
    description = "decide FAR from / NEAR to RM(2) by sampling third derivatives"
    command = "rm2"
    action = "dicho"
    feature_name = "rm2"
    formats = FUNCTION_FORMAT
    input_args = ("fn",)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)
        parser.add_argument("--delta", type=float, default=0.05, help="threshold in (0, 1) (default: 0.05)")
        parser.add_argument("--confidence", type=float, help="confidence in (0, 1) (default: config)")
        parser.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        f = load_function(args)
        verdict = dichotomy(f, args.delta, args.confidence, args.seed)
        payload = {"n": f.n}
        payload.update(verdict.to_dict())
        return self.ok(payload)


# 创建处理器和接收器
distance_receiver = CommandReceiver(DistanceHandler())
dichotomy_receiver = CommandReceiver(DichotomyHandler())


__all__ = [
    "FAR",
    "NEAR",
    "DichotomyVerdict",
    "NearestQuadratic",
    "dichotomy",
    "dichotomy_sample_size",
    "far_distance_bound",
    "rm2_correlation_bound_check",
    "rm2_exact_distance",
    "u3_product_invariance",
]
