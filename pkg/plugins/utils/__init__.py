"""
工具模块 - 纯函数工具集合

提供与业务逻辑无关的通用工具函数，包括 GF(2) 线性代数、
位运算、文件格式解析和文本输出。

使用方式:
    >>> from plugins.utils import gf2, popcount, format_payload
    >>> gf2.rank([[1, 0], [1, 0]])
    1
"""

from . import gf2
from .bits import (
    bits_to_int,
    dot_parity,
    int_to_bits,
    parity,
    point_bits,
    popcount,
    rows_to_ints,
    xor_reduce,
)
from .formats import read_text
from .text import format_payload, format_table, format_value


__all__ = [
    "gf2",
    # 位运算
    "bits_to_int",
    "dot_parity",
    "int_to_bits",
    "parity",
    "point_bits",
    "popcount",
    "rows_to_ints",
    "xor_reduce",
    # 文件
    "read_text",
    # 文本输出
    "format_payload",
    "format_table",
    "format_value",
]
