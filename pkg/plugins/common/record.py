"""
运行记录模块 - --out 写出的 JSON 记录

每次命令执行都会生成一条 RunRecord：命令路径、种子、
输入文件的 SHA-256 摘要、结果字典、耗时、版本与运行环境。
耗时只出现在记录中，不出现在标准输出里，保证相同种子的
标准输出逐字节一致。

使用方式:
    >>> record = RunRecord.create("test blr", seed=7, input_paths=["f.tt"],
    ...                           result={"acceptance": 0.81}, wall_time=0.42)
    >>> record.write("run.json")
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional

from . import __version__
from .base import InputError
from .services.system import RuntimeMonitor


def file_digest(path: str) -> str:
    """
    计算文件 SHA-256 摘要

    Raises:
        InputError: 文件不可读
    """
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from e


@dataclass
class RunRecord:
    """
    运行记录数据类

    Attributes:
        command: 命令路径，如 "test blr"
        seed: 随机种子（确定性命令为 None）
        inputs: 输入文件路径 -> SHA-256
        result: 结果字典
        wall_time: 墙钟耗时（秒）
        version: 工具箱版本
        environment: 运行环境快照
    """
    command: str
    seed: Optional[int]
    inputs: dict[str, str]
    result: dict[str, Any]
    wall_time: float
    version: str = __version__
    environment: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def create(cls, command: str, *, seed: Optional[int], input_paths: Iterable[str],
               result: dict[str, Any], wall_time: float) -> "RunRecord":
        """采集输入摘要与运行环境后创建记录"""
        return cls(
            command=command,
            seed=seed,
            inputs={path: file_digest(path) for path in input_paths},
            result=result,
            wall_time=round(wall_time, 6),
            environment=RuntimeMonitor.get_instance().snapshot(),
        )

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def write(self, path: str) -> None:
        """
        写出 JSON 记录

        Raises:
            InputError: 目标不可写
        """
        try:
            Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n",
                                  encoding="utf-8")
        except OSError as e:
            raise InputError(f"{path}: {e.strerror or e}") from e
