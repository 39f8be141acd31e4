"""
文件格式工具模块 - 解析与输出

只处理文本与原始数组，不依赖任何业务模型；
各功能包的 models.py 在此基础上提供 from_file / to_text。
解析错误统一抛出 InputError，消息格式为 "path:line: message"。

格式一览:
    真值表        第一行 n=<k>；第二行 2^k 个 0/1 字符（比特 1 表示 f = -1，
                  第 i 个字符是编号 i 的点，x_1 为最低位）
    矩阵          t 行，每行 T 个 0/1 字符，无分隔符
    超图          第一行 t=<顶点数>；之后每行一条边，空格分隔的 1 起始顶点编号
    二次多项式    n=<k>；上三角系数（按行展开，n(n-1)/2 个字符）；
                  线性项（n 个字符）；常数位（1 个字符）
    群描述        p^k1 x p^k2 x ...，如 2^2 x 2^1
    映射文件      每行一个值域元组（按定义域枚举顺序），分量以空格或逗号分隔

使用方式:
    >>> from plugins.utils.formats import parse_truth_table, read_text
    >>> n, bits = parse_truth_table("n=2\\n0001\\n", source="and.tt")
"""

import re
from pathlib import Path
from typing import Optional

import numpy as np

from ..common.base import InputError

_HEADER = re.compile(r"^\s*([a-zA-Z]+)\s*=\s*(-?\d+)\s*$")
_GROUP_FACTOR = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def read_text(path: str) -> str:
    """
    读取文本文件

    Raises:
        InputError: 文件不存在或不可读
    """
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"{path}: cannot read: {e}") from None


def write_text(path: str, text: str) -> None:
    """
    写入文本文件

    Raises:
        InputError: 无法写入
    """
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: cannot write: {e.strerror or e}") from None


def _fail(source: str, line: int, message: str) -> InputError:
    return InputError(f"{source}:{line}: {message}")


def _content_lines(text: str) -> list[tuple[int, str]]:
    """(行号, 去除首尾空白的内容)，跳过空行与 # 注释"""
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((number, line))
    return out


def _parse_header(source: str, number: int, line: str, key: str) -> int:
    match = _HEADER.match(line)
    if not match or match.group(1).lower() != key:
        raise _fail(source, number, f"expected '{key}=<int>', got '{line}'")
    return int(match.group(2))


def _parse_bits(source: str, number: int, line: str, expected: Optional[int] = None) -> np.ndarray:
    bad = set(line) - {"0", "1"}
    if bad:
        raise _fail(source, number, f"unexpected character {sorted(bad)[0]!r}, only 0 and 1 allowed")
    if expected is not None and len(line) != expected:
        raise _fail(source, number, f"expected {expected} bits, got {len(line)}")
    return np.frombuffer(line.encode("ascii"), dtype=np.uint8) - ord("0")


def bits_to_text(bits) -> str:
    """0/1 数组 -> 字符串"""
    return "".join("1" if b else "0" for b in np.asarray(bits).reshape(-1))


# ========== 真值表 ==========

def parse_truth_table(text: str, source: str = "<input>", max_n: int = 24) -> tuple[int, np.ndarray]:
    """
    解析真值表文本

    Returns:
        (n, 长度 2^n 的 uint8 比特数组)
    """
    lines = _content_lines(text)
    if not lines:
        raise _fail(source, 1, "empty truth-table file")
    number, header = lines[0]
    n = _parse_header(source, number, header, "n")
    if not 1 <= n <= max_n:
        raise _fail(source, number, f"n must be in [1, {max_n}], got {n}")
    if len(lines) < 2:
        raise _fail(source, number + 1, f"missing truth-table line of {1 << n} bits")
    if len(lines) > 2:
        raise _fail(source, lines[2][0], "unexpected extra line")
    number, body = lines[1]
    return n, _parse_bits(source, number, body, 1 << n)


def format_truth_table(n: int, bits) -> str:
    return f"n={n}\n{bits_to_text(bits)}\n"


# ========== 矩阵 ==========

def parse_matrix(text: str, source: str = "<input>") -> np.ndarray:
    """
    解析矩阵文本

    Returns:
        t×T 的 uint8 矩阵
    """
    lines = _content_lines(text)
    if not lines:
        raise _fail(source, 1, "empty matrix file")
    width = len(lines[0][1])
    rows = [_parse_bits(source, number, line, width) for number, line in lines]
    return np.array(rows, dtype=np.uint8)


def format_matrix(matrix) -> str:
    return "".join(bits_to_text(row) + "\n" for row in np.asarray(matrix))


# ========== 超图 ==========

def parse_hypergraph(text: str, source: str = "<input>") -> tuple[int, list[tuple[int, ...]]]:
    """
    解析超图文本

    Returns:
        (t, 边列表)；边为排序后的 1 起始顶点元组，重复顶点与重复边报错
    """
    lines = _content_lines(text)
    if not lines:
        raise _fail(source, 1, "empty hypergraph file")
    number, header = lines[0]
    t = _parse_header(source, number, header, "t")
    if t < 1:
        raise _fail(source, number, f"t must be >= 1, got {t}")
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for number, line in lines[1:]:
        try:
            vertices = [int(tok) for tok in line.split()]
        except ValueError:
            raise _fail(source, number, f"edge must be space-separated integers, got '{line}'") from None
        for v in vertices:
            if not 1 <= v <= t:
                raise _fail(source, number, f"vertex {v} out of range [1, {t}]")
        edge = tuple(sorted(vertices))
        if len(set(edge)) != len(edge):
            raise _fail(source, number, "edge repeats a vertex")
        if edge in seen:
            raise _fail(source, number, f"duplicate edge {list(edge)}")
        seen.add(edge)
        edges.append(edge)
    return t, edges


def format_hypergraph(t: int, edges) -> str:
    return f"t={t}\n" + "".join(" ".join(str(v) for v in e) + "\n" for e in edges)


# ========== 二次多项式 ==========

def parse_quadratic(text: str, source: str = "<input>") -> tuple[int, np.ndarray, np.ndarray, int]:
    """
    解析二次多项式文本

    上三角行在 n = 1 时为空行，因此本格式按位置读取，不跳过空行。

    Returns:
        (n, 上三角系数数组, 线性项, 常数位)
    """
    lines = [raw.strip() for raw in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if len(lines) != 4:
        raise _fail(source, min(len(lines) + 1, 5),
                    f"expected 4 lines (header, quadratic, linear, constant), got {len(lines)}")
    n = _parse_header(source, 1, lines[0], "n")
    if n < 1:
        raise _fail(source, 1, f"n must be >= 1, got {n}")
    quad = _parse_bits(source, 2, lines[1], n * (n - 1) // 2)
    lin = _parse_bits(source, 3, lines[2], n)
    const = _parse_bits(source, 4, lines[3], 1)
    return n, quad, lin, int(const[0])


def format_quadratic(n: int, quad, lin, const_bit: int) -> str:
    return f"n={n}\n{bits_to_text(quad)}\n{bits_to_text(lin)}\n{int(const_bit) & 1}\n"


# ========== 群与映射 ==========

def parse_group_spec(spec: str) -> tuple[int, list[int]]:
    """
    解析群描述

    Returns:
        (p, [k1, k2, ...])

    Raises:
        InputError: 格式错误或各因子素数不一致

    Example:
        >>> parse_group_spec("2^2 x 2^1")
        (2, [2, 1])
    """
    factors = [part for part in re.split(r"\s*[x×*]\s*", spec.strip()) if part]
    if not factors:
        raise InputError(f"empty group spec '{spec}'")
    primes, exponents = set(), []
    for part in factors:
        match = _GROUP_FACTOR.match(part)
        if not match:
            raise InputError(f"bad group factor '{part}' in '{spec}', expected p^k")
        primes.add(int(match.group(1)))
        exponents.append(int(match.group(2) or 1))
    if len(primes) != 1:
        raise InputError(f"group '{spec}' mixes primes {sorted(primes)}; only p-groups are supported")
    return primes.pop(), exponents


def format_group_spec(p: int, orders) -> str:
    return " x ".join(f"{p}^{k}" for k in orders)


def parse_map_table(text: str, width: int, source: str = "<input>") -> list[tuple[int, ...]]:
    """
    解析映射文件

    Args:
        text: 文件内容
        width: 每个值域元组的分量数

    Returns:
        元组列表（按行顺序）
    """
    rows = []
    for number, line in _content_lines(text):
        tokens = [tok for tok in re.split(r"[\s,()]+", line) if tok]
        try:
            values = tuple(int(tok) for tok in tokens)
        except ValueError:
            raise _fail(source, number, f"expected integers, got '{line}'") from None
        if len(values) != width:
            raise _fail(source, number, f"expected {width} components, got {len(values)}")
        rows.append(values)
    return rows


def format_map_table(rows) -> str:
    return "".join(" ".join(str(v) for v in row) + "\n" for row in rows)
