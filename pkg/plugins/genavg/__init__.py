"""
广义平均插件 - E_A(f) 与化归到 Gowers 范数

二元矩阵 A 定义的平均 E_A(f)、行空间极小向量（超平面），
以及把 |E_A(f)| 化归为 ‖f‖_{U_k} 上界的矩阵变换链。

触发方式:
    - lowdeg average --matrix A.txt --fn f.tt
    - lowdeg average --ak 3 --fn f.tt --estimate --trials 100000 --seed 1
    - lowdeg reduce --matrix A.txt [--k 3]

配置:
    LOWDEG_GENAVG_ENABLED=True/False   # 功能开关
    LOWDEG_GENAVG_MAX_NT=26            # 精确平均的 n·t 上限
    LOWDEG_MATROID_MAX_ROWS=20         # 行空间穷举的行数上限

使用方式:
    >>> from plugins.genavg import BinaryMatrix, generalized_average_exact, reduce_to_uk
    >>> blr = BinaryMatrix.from_rows(["101", "011"])
    >>> reduce_to_uk(blr).terminal_k
    2
"""

import argparse

from plugins.common import CommandHandler, CommandReceiver, Result
from plugins.core import FUNCTION_FORMAT, add_function_arguments, load_function

from .average import (
    generalized_average_estimate,
    generalized_average_exact,
    generalized_average_exact_many,
)
from .matroid import (
    is_minimal_vector,
    row_space_hyperplanes,
    row_space_minimal_vectors,
    smaller_support_vector,
)
from .models import AverageEstimate, BinaryMatrix, ReductionCertificate, ReductionStep
from .reduction import (
    ak_matrix,
    apply_row_transform,
    drop_dependent_rows,
    is_ak_equivalent,
    reduce_to_uk,
    reduction_step,
    row_equivalent,
    simplify,
    verify_certificate,
)

MATRIX_FORMAT = """\
matrix file (--matrix):
  t lines, each a string of T characters from {0,1}, no separators;
  column j is the characteristic vector of edge e_j over the t variables"""


def _add_matrix_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--matrix", metavar="PATH", help="matrix file")
    group.add_argument("--ak", type=int, metavar="K", help="use the Gowers matrix A_K")


def _load_matrix(args: argparse.Namespace) -> BinaryMatrix:
    if args.matrix:
        return BinaryMatrix.from_file(args.matrix)
    return ak_matrix(args.ak)


class AverageHandler(CommandHandler):
    """
    广义平均处理器

    默认精确枚举；--estimate 切换到 Monte-Carlo；--simplify 先消去重复列。
    """

    name = "广义平均"
    description = "generalized average E_A(f) of a function over a binary matrix"
    command = "average"
    feature_name = "genavg"
    formats = MATRIX_FORMAT + "\n\n" + FUNCTION_FORMAT
    randomized = True
    input_args = ("matrix", "fn")

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        _add_matrix_arguments(parser)
        add_function_arguments(parser)
        parser.add_argument("--estimate", action="store_true", help="Monte-Carlo estimate")
        parser.add_argument("--simplify", action="store_true",
                            help="cancel duplicate column pairs and zero rows first")

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        a = _load_matrix(args)
        f = load_function(args)
        if args.simplify:
            a = simplify(a)
        payload = {"n": f.n, "t": a.t, "T": a.T}
        if args.estimate:
            payload.update(generalized_average_estimate(a, f, args.trials, args.seed).to_dict())
        else:
            payload["value"] = generalized_average_exact(a, f)
        return self.ok(payload)


class ReduceHandler(CommandHandler):
    """化归证书处理器：输出每一步的矩阵与最终上界"""

    name = "化归证书"
    description = "reduce a matrix to some A_k and print the certificate"
    command = "reduce"
    feature_name = "genavg"
    formats = MATRIX_FORMAT
    input_args = ("matrix",)

    ERROR_MESSAGES = {
        "bad_k": "--k must be >= 1, got {k}",
    }

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        _add_matrix_arguments(parser)
        parser.add_argument("--k", type=int, help="column weight bound (default: max column weight)")

    def handle(self, args: argparse.Namespace) -> Result[dict]:
        if args.k is not None and args.k < 1:
            return self.fail("bad_k", k=args.k)
        a = _load_matrix(args)
        cert = reduce_to_uk(a, args.k)
        payload = cert.to_dict()
        payload["verified"] = verify_certificate(a, cert)
        payload["report"] = cert.to_text()
        return self.ok(payload)

    def render(self, payload: dict) -> str:
        return payload["report"] + f"verified: {'yes' if payload['verified'] else 'no'}"


# 创建处理器和接收器
average_receiver = CommandReceiver(AverageHandler())
reduce_receiver = CommandReceiver(ReduceHandler())


__all__ = [
    # 模型
    "AverageEstimate",
    "BinaryMatrix",
    "ReductionCertificate",
    "ReductionStep",
    # 平均
    "generalized_average_estimate",
    "generalized_average_exact",
    "generalized_average_exact_many",
    # 拟阵
    "is_minimal_vector",
    "row_space_hyperplanes",
    "row_space_minimal_vectors",
    "smaller_support_vector",
    # 化归
    "ak_matrix",
    "apply_row_transform",
    "drop_dependent_rows",
    "is_ak_equivalent",
    "reduce_to_uk",
    "reduction_step",
    "row_equivalent",
    "simplify",
    "verify_certificate",
    "MATRIX_FORMAT",
]
