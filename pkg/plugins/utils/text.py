"""
文本输出工具模块

把结果字典渲染为对齐的键值表和列表，用于命令行的人类可读输出。
浮点数统一按 12 位有效数字输出，保证相同结果渲染出相同文本。

使用方式:
    >>> print(format_payload({"n": 4, "value": 0.5}))
    n      4
    value  0.5
"""

from typing import Any, Sequence

# 浮点数有效位数
FLOAT_DIGITS = 12


def format_value(value: Any) -> str:
    """
    格式化单个值

    Example:
        >>> format_value(1 / 3)
        '0.333333333333'
        >>> format_value([1, 2])
        '1, 2'
    """
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.{FLOAT_DIGITS}g}"
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(v) for v in value)
    return str(value)


def format_table(rows: Sequence[Sequence[Any]], headers: Sequence[str]) -> str:
    """
    渲染对齐的表格

    Args:
        rows: 行数据
        headers: 表头

    Returns:
        多行文本（列之间两个空格）
    """
    cells = [[str(h) for h in headers]] + [[format_value(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def format_payload(payload: dict[str, Any]) -> str:
    """
    渲染结果字典

    标量按键值对齐输出；字典列表渲染为表格，放在键值之后。
    """
    scalars = []
    tables = []
    for key, value in payload.items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            headers = list(value[0].keys())
            tables.append(f"{key}:\n" + format_table([[v.get(h) for h in headers] for v in value],
                                                     headers))
        elif isinstance(value, dict):
            inner = format_payload(value)
            tables.append(f"{key}:\n" + "\n".join("  " + line for line in inner.splitlines()))
        elif isinstance(value, str) and "\n" in value:
            tables.append(f"{key}:\n{value.rstrip()}")
        else:
            scalars.append((key, format_value(value)))

    width = max((len(k) for k, _ in scalars), default=0)
    parts = []
    if scalars:
        parts.append("\n".join(f"{k.ljust(width)}  {v}".rstrip() for k, v in scalars))
    parts.extend(tables)
    return "\n\n".join(parts)
