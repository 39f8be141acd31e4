"""
采样服务模块 - 可复现的并行试验

服务层 - 为所有 Monte-Carlo 过程提供分块随机流与线程池

试验被切分成固定大小的块，第 b 块使用由 (seed, stream, b) 派生的
Philox 计数器随机流。每块返回整数，按块顺序求和，
因此结果与线程数无关，逐位一致。

使用方式:
    >>> from plugins.common.services import TrialRunner
    >>> runner = TrialRunner.get_instance()
    >>>
    >>> def kernel(rng, count):
    ...     return int((rng.integers(0, 2, size=count) == 0).sum())
    >>>
    >>> accepts = runner.run_trials(seed=7, trials=10_000, kernel=kernel)
"""

from concurrent.futures import ThreadPoolExecutor
from enum import IntEnum
from typing import Callable, Iterable, Optional, TypeVar

import numpy as np

from ..base import InputError, ServiceBase
from ..config import config
from .system import RuntimeMonitor

T = TypeVar('T')
R = TypeVar('R')


class Stream(IntEnum):
    """随机流编号，同一种子下不同用途互不重叠"""
    RANDOM_FUNCTION = 1
    NOISE = 2
    RANDOM_QUADRATIC = 3
    GOWERS = 10
    GENAVG = 11
    BLR = 20
    HYPERGRAPH = 21
    QUADRATICITY = 22
    AKKLR = 23
    DICHOTOMY = 30
    DECODER = 40
    HOM = 50


# 试验内核: (随机数生成器, 本块试验数) -> 整数统计量
TrialKernel = Callable[[np.random.Generator, int], int]


def stream_generator(seed: int, *key: int) -> np.random.Generator:
    """
    获取 (seed, key...) 对应的独立随机流

    Args:
        seed: 非负整数种子
        *key: 流标识（如流编号、块编号）

    Returns:
        基于 Philox 计数器的 numpy Generator

    Raises:
        InputError: seed 为负数

    Example:
        >>> rng = stream_generator(42, 0, 3)
        >>> rng.integers(0, 16, size=4)
    """
    if seed < 0:
        raise InputError(f"seed must be non-negative, got {seed}")
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(sequence))


class TrialRunner(ServiceBase):
    """
    试验执行服务

    持有一个延迟创建的线程池；线程数取 config.threads，
    未设置时取物理 CPU 数。numpy 内核在计算期间释放 GIL，
    线程池能带来实际加速。

    Attributes:
        _executor: 线程池（单线程时为 None）
        _workers: 当前线程池的线程数

    Example:
        >>> runner = TrialRunner.get_instance()
        >>> partial = runner.map(lambda chunk: chunk.sum(), chunks)
    """

    def __init__(self) -> None:
        super().__init__()
        self._executor: Optional[ThreadPoolExecutor] = None
        self._workers = 0

    @property
    def workers(self) -> int:
        """当前生效的线程数"""
        if config.threads:
            return config.threads
        return RuntimeMonitor.get_instance().physical_cpus()

    def _get_executor(self) -> Optional[ThreadPoolExecutor]:
        workers = self.workers
        if workers <= 1:
            return None
        if self._executor is None or self._workers != workers:
            self.shutdown()
            self._executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="lowdeg")
            self._workers = workers
            self.logger.debug(f"线程池已创建: {workers} 线程")
        return self._executor

    def map(self, func: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """
        按输入顺序返回 func(item) 的结果列表

        调用方负责按列表顺序归约，保证结果与线程数无关。

        Args:
            func: 纯函数
            items: 输入序列

        Returns:
            与 items 顺序一致的结果列表
        """
        items = list(items)
        executor = self._get_executor()
        if executor is None or len(items) <= 1:
            return [func(item) for item in items]
        return list(executor.map(func, items))

    def run_trials(self, seed: int, trials: int, kernel: TrialKernel, stream: int = 0) -> int:
        """
        分块执行试验并对整数统计量求和

        Args:
            seed: 随机种子
            trials: 试验总数（≥ 1）
            kernel: 试验内核，返回本块的整数统计量
            stream: 流编号，区分同一种子下的不同用途

        Returns:
            所有块统计量之和

        Raises:
            InputError: trials < 1 或 seed < 0

        Example:
            >>> total = runner.run_trials(1, 100_000, kernel)
        """
        if trials < 1:
            raise InputError(f"trials must be >= 1, got {trials}")
        if seed < 0:
            raise InputError(f"seed must be non-negative, got {seed}")
        block = config.block_size
        blocks = [(index, min(block, trials - index * block))
                  for index in range(-(-trials // block))]

        def run_block(spec: tuple[int, int]) -> int:
            index, count = spec
            return int(kernel(stream_generator(seed, stream, index), count))

        return sum(self.map(run_block, blocks))

    def shutdown(self) -> None:
        """关闭线程池"""
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None
            self._workers = 0

    def reset(self) -> None:
        """重置服务（用于测试）"""
        self.shutdown()
        super().reset()


def get_trial_runner() -> TrialRunner:
    """获取试验执行服务实例"""
    return TrialRunner.get_instance()
