"""
核心模块 - 命令行函数输入

各功能命令共用的 --fn / --poly 参数：真值表文件或二次多项式表达式。

使用方式:
    >>> add_function_arguments(parser)
    >>> f = load_function(args)
"""

import argparse

from plugins.common import InputError
from plugins.utils.bits import int_to_bits
from plugins.utils.formats import bits_to_text

from .generators import from_quadratic, parse_polynomial
from .models import BooleanFunction

FUNCTION_FORMAT = """\
truth-table file (--fn):
  line 1: n=<k>
  line 2: 2^k characters from {0,1}; character i is f at the point whose
          index is i, with x1 the least significant bit; 1 means f = -1
polynomial (--poly, with --n): degree <= 2 expression such as x1*x2+x3+1"""


def add_function_arguments(parser: argparse.ArgumentParser, dest: str = "fn",
                           required: bool = True) -> None:
    """注册 --fn PATH 与 --poly EXPR --n N"""
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument(f"--{dest}", dest=dest, metavar="PATH", help="truth-table file")
    group.add_argument(f"--{dest}-poly" if dest != "fn" else "--poly", dest=f"{dest}_poly",
                       metavar="EXPR", help="quadratic expression, e.g. x1*x2+x3")
    if dest == "fn":
        parser.add_argument("--n", type=int, help="number of variables for --poly")


def load_function(args: argparse.Namespace, dest: str = "fn") -> BooleanFunction:
    """
    由命令行参数读取布尔函数

    Raises:
        InputError: 文件格式错误或缺少 --n
    """
    path = getattr(args, dest, None)
    if path:
        return BooleanFunction.from_file(path)
    expr = getattr(args, f"{dest}_poly", None)
    if expr is None:
        raise InputError(f"missing --{dest}")
    n = getattr(args, "n", None)
    if n is None:
        raise InputError("--poly needs --n")
    return from_quadratic(parse_polynomial(expr, n))


def point_text(index: int, n: int) -> str:
    """点编号 -> x_1..x_n 比特串"""
    return bits_to_text(int_to_bits(index, n))
