"""
Gowers 插件 - 一致性范数 ‖f‖_{U_d}

精确计算（谱恒等式与导数递推）与 Monte-Carlo 估计。

触发方式:
    - lowdeg gowers --fn f.tt --d 3 [--exact]
    - lowdeg gowers --fn f.tt --d 3 --estimate --trials 100000 --seed 7
    - lowdeg gowers --fn f.tt --profile 4

配置:
    LOWDEG_GOWERS_ENABLED=True/False   # 功能开关
    LOWDEG_GOWERS_BUDGET=4294967296    # 精确计算运算预算

使用方式:
    >>> from plugins.gowers import gowers_norm_exact
    >>> gowers_norm_exact(f, 3)
"""

import argparse

from plugins.common import CommandHandler, CommandReceiver, Result
from plugins.core import FUNCTION_FORMAT, add_function_arguments, load_function

from .models import GowersEstimate, sample_stderr
from .norms import (
    gowers_cost,
    gowers_norm_estimate,
    gowers_norm_exact,
    gowers_norm_exact_many,
    gowers_profile,
    gowers_raw_direct,
    gowers_raw_exact,
    gowers_raw_exact_many,
    u2_via_spectrum,
    u3_via_derivative_spectra,
)


class GowersHandler(CommandHandler):
    """
    Gowers 范数处理器

    默认精确计算；--estimate 切换到 Monte-Carlo；--profile K 输出 d = 1..K。
    """

    name = "Gowers 范数"
    description = "Gowers uniformity norm ||f||_{U_d}: exact value or Monte-Carlo estimate"
    command = "gowers"
    feature_name = "gowers"
    formats = FUNCTION_FORMAT
    randomized = True
    default_trials = 100_000
    input_args = ("fn",)

    ERROR_MESSAGES = {
        "bad_order": "--d must be >= 1, got {d}",
        "bad_profile": "--profile must be >= 1, got {k}",
    }

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)
        parser.add_argument("--d", type=int, default=2, help="order d >= 1 (default: 2)")
        mode = parser.add_mutually_exclusive_group()
        mode.add_argument("--exact", action="store_true", help="exact computation (default)")
        mode.add_argument("--estimate", action="store_true", help="Monte-Carlo estimate")
        mode.add_argument("--profile", type=int, metavar="K", help="exact norms for d = 1..K")

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        f = load_function(args)
        if args.profile is not None:
            if args.profile < 1:
                return self.fail("bad_profile", k=args.profile)
            norms = gowers_profile(f, args.profile)
            return self.ok({
                "n": f.n,
                "profile": [{"d": d, "norm": v} for d, v in enumerate(norms, start=1)],
            })
        if args.d < 1:
            return self.fail("bad_order", d=args.d)
        if args.estimate:
            estimate = gowers_norm_estimate(f, args.d, args.trials, args.seed)
            return self.ok(estimate.to_dict())
        raw = gowers_raw_exact(f, args.d)
        return self.ok({
            "n": f.n,
            "d": args.d,
            "raw": raw,
            "value": max(raw, 0.0) ** (1.0 / (1 << args.d)),
        })


# 创建处理器和接收器
handler = GowersHandler()
receiver = CommandReceiver(handler)


__all__ = [
    "GowersEstimate",
    "sample_stderr",
    "gowers_cost",
    "gowers_norm_estimate",
    "gowers_norm_exact",
    "gowers_norm_exact_many",
    "gowers_profile",
    "gowers_raw_direct",
    "gowers_raw_exact",
    "gowers_raw_exact_many",
    "u2_via_spectrum",
    "u3_via_derivative_spectra",
]
