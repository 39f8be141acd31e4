"""
核心插件 - 真值表、傅里叶谱与函数生成

布尔函数的表示（比特打包真值表）、Walsh–Hadamard 变换、方向导数、
距离以及函数生成器。其余功能包都建立在本包之上。

触发方式:
    - lowdeg spectrum --fn f.tt [--top K]
    - lowdeg gen linear|bent|quadratic|random|noisy ...

配置:
    LOWDEG_CORE_ENABLED=True/False    # 功能开关
    LOWDEG_MAX_EXACT_N=24             # 精确运算最大 n

使用方式:
    >>> from plugins.core import inner_product_bent, wht
    >>> wht(inner_product_bent(4)).max_abs()
    0.25
"""

import argparse

from plugins.common import CommandHandler, CommandReceiver, Result
from plugins.utils.formats import write_text

from .distance import AffineApproximation, affine_distance, normalized_distance
from .generators import (
    affine_from_index,
    bent_polynomial,
    from_quadratic,
    inner_product_bent,
    linear_fn,
    noisy,
    parse_polynomial,
    random_fn,
    random_quadratic,
)
from .inputs import FUNCTION_FORMAT, add_function_arguments, load_function, point_text
from .models import BooleanFunction, FourierSpectrum, QuadraticPolynomial
from .transform import (
    derivative,
    derivative_bits,
    derivative_spectra,
    fwht,
    inverse_wht,
    iter_derivative_walsh,
    iterated_derivative,
    walsh_sums,
    wht,
)

QUADRATIC_FORMAT = """\
quadratic file (--poly-out):
  line 1: n=<k>
  line 2: upper-triangular coefficients of x_i*x_j (i<j), row-major, n(n-1)/2 chars
  line 3: linear coefficients x1..xn
  line 4: constant bit"""


class SpectrumHandler(CommandHandler):
    """
    傅里叶谱处理器

    输出按 |f̂| 降序（并列按 α 升序）的系数表。
    """

    name = "傅里叶谱"
    description = "Walsh-Hadamard spectrum sorted by |coefficient|, descending"
    command = "spectrum"
    feature_name = "core"
    formats = FUNCTION_FORMAT
    input_args = ("fn",)

    ERROR_MESSAGES = {
        "bad_top": "--top must be >= 1, got {top}",
    }

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)
        parser.add_argument("--top", type=int, help="show only the K largest coefficients")
        parser.add_argument("--nonzero", action="store_true", help="omit zero coefficients")

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        if args.top is not None and args.top < 1:
            return self.fail("bad_top", top=args.top)
        f = load_function(args)
        spectrum = wht(f)
        ranked = spectrum.ranked()
        if args.nonzero:
            ranked = [(a, c) for a, c in ranked if c != 0.0]
        if args.top is not None:
            ranked = ranked[:args.top]
        affine = affine_distance(f)
        return self.ok({
            "n": f.n,
            "parseval": spectrum.parseval(),
            "max_abs": spectrum.max_abs(),
            "affine_distance": affine.distance,
            "coefficients": [
                {"alpha": a, "bits": point_text(a, f.n), "coeff": c} for a, c in ranked
            ],
        })


class _GenHandler(CommandHandler):
    """gen 命令公共部分：输出真值表文本或保存到文件"""

    command = "gen"
    feature_name = "core"
    formats = FUNCTION_FORMAT + "\n\n" + QUADRATIC_FORMAT

    def add_output_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--save", metavar="PATH", help="write the truth table to PATH")

    def build(self, args: argparse.Namespace) -> tuple[BooleanFunction, dict]:
        raise NotImplementedError

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        f, extra = self.build(args)
        payload = {"n": f.n, "weight": f.weight(), "digest": f.digest()}
        payload.update(extra)
        if args.save:
            write_text(args.save, f.to_text())
            payload["saved"] = args.save
        else:
            payload["table"] = f.to_text().splitlines()[1]
        return self.ok(payload)

    def render(self, payload: dict) -> str:
        if "table" in payload:
            return f"n={payload['n']}\n{payload['table']}"
        return super().render(payload)


class GenLinearHandler(_GenHandler):
    """仿射函数 (-1)^{⟨a,x⟩+b}"""

    name = "仿射函数"
    description = "affine function (-1)^(<a,x>+b)"
    action = "linear"

    ERROR_MESSAGES = {
        "bad_bits": "--a must be a non-empty 0/1 string, got '{bits}'",
    }

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--a", required=True, metavar="BITS",
                            help="coefficient bits a1..an, e.g. 0110")
        parser.add_argument("--b", type=int, default=0, choices=(0, 1), help="constant bit")
        self.add_output_arguments(parser)

    def build(self, args):
        self.require(bool(args.a) and not set(args.a) - {"0", "1"}, "bad_bits", bits=args.a)
        return linear_fn([int(c) for c in args.a], args.b), {}


class GenBentHandler(_GenHandler):
    """内积 bent 函数"""

    name = "bent 函数"
    description = "inner-product bent function x1*x2+x3*x4+... (even n)"
    action = "bent"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True, help="number of variables (even)")
        self.add_output_arguments(parser)

    def build(self, args):
        return inner_product_bent(args.n), {"expression": bent_polynomial(args.n).to_expression()}


class GenQuadraticHandler(_GenHandler):
    """给定表达式或随机的二次多项式"""

    name = "二次函数"
    description = "quadratic function from --expr, or a random quadratic from --seed"
    action = "quadratic"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True, help="number of variables")
        parser.add_argument("--expr", help="expression such as x1*x2+x3+1")
        parser.add_argument("--seed", type=int, default=0, help="seed for a random quadratic")
        parser.add_argument("--poly-out", metavar="PATH", help="also write the polynomial file")
        self.add_output_arguments(parser)

    def build(self, args):
        if args.expr is not None:
            q = parse_polynomial(args.expr, args.n)
        else:
            q = random_quadratic(args.n, args.seed)
        if args.poly_out:
            write_text(args.poly_out, q.to_text())
        return from_quadratic(q), {"expression": q.to_expression()}


class GenRandomHandler(_GenHandler):
    """均匀随机函数"""

    name = "随机函数"
    description = "uniformly random function"
    action = "random"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True, help="number of variables")
        parser.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
        self.add_output_arguments(parser)

    def build(self, args):
        return random_fn(args.n, args.seed), {}


class GenNoisyHandler(_GenHandler):
    """以给定概率翻转输入函数的每个点"""

    name = "加噪函数"
    description = "flip each point of a function independently with probability --rate"
    action = "noisy"
    input_args = ("fn",)

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_function_arguments(parser)
        parser.add_argument("--rate", type=float, required=True, help="flip probability in [0, 1]")
        parser.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
        self.add_output_arguments(parser)

    def build(self, args):
        f = load_function(args)
        g = noisy(f, args.rate, args.seed)
        return g, {"distance": normalized_distance(f, g)}


# 创建处理器和接收器
spectrum_receiver = CommandReceiver(SpectrumHandler())
gen_receivers = [
    CommandReceiver(GenLinearHandler()),
    CommandReceiver(GenBentHandler()),
    CommandReceiver(GenQuadraticHandler()),
    CommandReceiver(GenRandomHandler()),
    CommandReceiver(GenNoisyHandler()),
]


__all__ = [
    # 模型
    "BooleanFunction",
    "FourierSpectrum",
    "QuadraticPolynomial",
    # 变换与导数
    "fwht",
    "walsh_sums",
    "wht",
    "inverse_wht",
    "derivative",
    "derivative_bits",
    "derivative_spectra",
    "iter_derivative_walsh",
    "iterated_derivative",
    # 距离
    "AffineApproximation",
    "affine_distance",
    "normalized_distance",
    # 生成器
    "affine_from_index",
    "bent_polynomial",
    "from_quadratic",
    "inner_product_bent",
    "linear_fn",
    "noisy",
    "parse_polynomial",
    "random_fn",
    "random_quadratic",
    # 命令行输入
    "FUNCTION_FORMAT",
    "QUADRATIC_FORMAT",
    "add_function_arguments",
    "load_function",
    "point_text",
]
