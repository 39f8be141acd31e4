"""
解码器插件 - 构造性二次解码

由导数谱出发找出与 f 高度相关的二次多项式，并提供管线依赖的
各个谱恒等式的数值核对。

触发方式:
    - lowdeg decode --fn f.tt [--restarts 50] [--threshold 0.3] [--seed 1]
    - lowdeg decode --fn f.tt --shift-search --poly-out g.poly

配置:
    LOWDEG_DECODER_ENABLED=True/False       # 功能开关
    LOWDEG_DECODER_RESTARTS=50              # 默认重启次数
    LOWDEG_DECODER_THRESHOLD_RATIO=0.5      # 默认阈值 = 平均权重 × 比例
    LOWDEG_DECODER_ORACLE_MAX_N=3           # n 不超过该值时穷举全部线性映射

使用方式:
    >>> from plugins.decoder import decode_quadratic
    >>> result = decode_quadratic(f, seed=1)
    >>> result.correlation, result.polynomial.to_expression()
"""

import argparse

from plugins.common import CommandHandler, CommandReceiver, Result
from plugins.core import (
    FUNCTION_FORMAT,
    QUADRATIC_FORMAT,
    add_function_arguments,
    load_function,
)
from plugins.utils.formats import write_text

from .lemmas import (
    close_dir_imp_close,
    linearity_rate,
    many_dir_identities,
    positive_dfn,
    weak_lin,
    zero_on_not_ort_residual,
)
from .models import (
    ChoiceFunction,
    DecodeResult,
    LinearFit,
    SymmetricZeroDiagMatrix,
    SymmetrizationStages,
    apply_matrix,
)
from .pipeline import (
    choice_function,
    decode_quadratic,
    default_threshold,
    fit_linear_map,
    quadratic_from_b,
    symmetrize,
    symmetrize_stages,
)


class DecodeHandler(CommandHandler):
    """
    二次解码处理器

    输出见证多项式、相关度、拟合统计与使用的矩阵 B。
    """

    name = "二次解码"
    description = "decode a quadratic witness correlated with f (choice function, fit, symmetrize)"
    command = "decode"
    feature_name = "decoder"
    formats = FUNCTION_FORMAT + "\n\n" + QUADRATIC_FORMAT
    input_args = ("fn",)

    ERROR_MESSAGES = {
        "bad_restarts": "--restarts must be >= 1, got {restarts}",
        "bad_threshold": "--threshold must be in [0, 1], got {threshold}",
    }

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)
        parser.add_argument("--restarts", type=int, help="linear fit restarts (default: config)")
        parser.add_argument("--threshold", type=float,
                            help="weight cutoff for the fit (default: mean weight x config ratio)")
        parser.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
        parser.add_argument("--shift-search", action="store_true",
                            help="fit y -> Dy + z instead of y -> Dy")
        parser.add_argument("--poly-out", metavar="PATH", help="write the witness polynomial file")

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        if args.restarts is not None and args.restarts < 1:
            return self.fail("bad_restarts", restarts=args.restarts)
        if args.threshold is not None and not 0.0 <= args.threshold <= 1.0:
            return self.fail("bad_threshold", threshold=args.threshold)
        f = load_function(args)
        result = decode_quadratic(f, threshold=args.threshold, restarts=args.restarts,
                                  seed=args.seed, shift_search=args.shift_search)
        payload = {"n": f.n}
        payload.update(result.to_dict())
        if args.poly_out:
            write_text(args.poly_out, result.polynomial.to_text())
            payload["saved"] = args.poly_out
        return self.ok(payload)


# 创建处理器和接收器
decode_receiver = CommandReceiver(DecodeHandler())


__all__ = [
    # 模型
    "ChoiceFunction",
    "DecodeResult",
    "LinearFit",
    "SymmetricZeroDiagMatrix",
    "SymmetrizationStages",
    "apply_matrix",
    # 管线
    "choice_function",
    "decode_quadratic",
    "default_threshold",
    "fit_linear_map",
    "quadratic_from_b",
    "symmetrize",
    "symmetrize_stages",
    # 恒等式
    "close_dir_imp_close",
    "linearity_rate",
    "many_dir_identities",
    "positive_dfn",
    "weak_lin",
    "zero_on_not_ort_residual",
]
