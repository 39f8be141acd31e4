"""
基础模块 - 服务基类、错误类型和 Result

提供统一的服务基类、异常层次和显式结果类型。
所有服务应继承 ServiceBase；计算函数通过异常报告错误，
命令处理器返回 Result[T]。

快速开始:
    >>> from plugins.common.base import ServiceBase, Result, InputError

    >>> class MyService(ServiceBase):
    ...     def initialize(self):
    ...         self._initialized = True

    >>> service = MyService.get_instance()

    >>> def parse_order(text: str) -> Result[int]:
    ...     if not text.isdigit():
    ...         return Result.err("order must be a positive integer")
    ...     return Result.ok(int(text))

异常层次:
    ToolkitError
    ├── InputError           输入格式错误、参数越界、维度不匹配（退出码 2）
    └── ResourceBudgetError  精确计算超出配置预算（退出码 3）
"""

from abc import ABC
from dataclasses import dataclass
from typing import Generic, Optional, Type, TypeVar

from .log import logger

T = TypeVar('T')
S = TypeVar('S', bound='ServiceBase')


class ToolkitError(Exception):
    """工具箱异常基类"""


class InputError(ToolkitError, ValueError):
    """
    输入错误

    文件格式、参数取值范围、维度不匹配等问题。
    文件解析错误的消息以 ``path:line:`` 开头。

    Example:
        >>> raise InputError("truth table has 3 bits, expected 4")
    """


class ResourceBudgetError(ToolkitError):
    """
    资源预算错误

    精确算法所需的运算量超过配置上限时抛出，
    携带上限字段名、所需量、允许量以及替代方案提示。

    Attributes:
        limit: 配置字段名（如 "gowers_budget"）
        required: 本次计算所需的运算量
        allowed: 配置允许的上限
        hint: 替代方案（通常是 Monte-Carlo 估计器）

    Example:
        >>> raise ResourceBudgetError("gowers_budget", 2**40, 2**32,
        ...                           hint="use gowers_norm_estimate")
    """

    def __init__(self, limit: str, required: int, allowed: int, hint: str = "") -> None:
        self.limit = limit
        self.required = required
        self.allowed = allowed
        self.hint = hint
        message = f"{limit} exceeded: need {required}, allowed {allowed}"
        if hint:
            message += f" ({hint})"
        super().__init__(message)


def ensure_budget(limit: str, required: int, allowed: int, hint: str = "") -> None:
    """
    预算检查，超限抛出 ResourceBudgetError

    Example:
        >>> ensure_budget("rm2_max_n", 7, 6, hint="use dichotomy")
        Traceback (most recent call last):
        ...
        ResourceBudgetError: rm2_max_n exceeded: need 7, allowed 6 (use dichotomy)
    """
    if required > allowed:
        raise ResourceBudgetError(limit, required, allowed, hint)


class ServiceBase(ABC):
    """
    服务基类 - 统一管理单例模式和生命周期

    所有服务应继承此类，自动获得：
    - 单例模式管理（全局唯一实例）
    - 延迟初始化（首次使用时初始化）
    - 绑定了服务名的日志记录器

    使用方式:
        >>> class PoolService(ServiceBase):
        ...     def initialize(self):
        ...         if self._initialized:
        ...             return
        ...         self.pool = create_pool()
        ...         self._initialized = True

        >>> pool = PoolService.get_instance()
        >>> assert pool is PoolService.get_instance()

    Attributes:
        _instances: 类级别的实例字典，存储所有服务的单例
        _initialized: 实例是否已初始化
        logger: 日志记录器（loguru，已绑定 service 字段）
    """

    _instances: dict[Type, 'ServiceBase'] = {}

    def __init__(self) -> None:
        """初始化服务基类，子类必须调用 super().__init__()"""
        self._initialized = False
        self.logger = logger.bind(service=type(self).__name__)

    @classmethod
    def get_instance(cls: Type[S]) -> S:
        """
        获取服务单例实例

        首次调用时创建实例，后续调用返回同一对象。

        Example:
            >>> runner = TrialRunner.get_instance()
        """
        if cls not in cls._instances:
            cls._instances[cls] = cls()
        return cls._instances[cls]  # type: ignore

    def ensure_initialized(self) -> None:
        """确保服务已初始化，未初始化时调用 initialize()"""
        if not self._initialized:
            self.initialize()

    def initialize(self) -> None:
        """
        初始化服务（子类可重写）

        多次调用应无副作用（幂等）。
        """
        self._initialized = True

    def reset(self) -> None:
        """
        重置服务状态（用于测试）

        清除初始化状态，下次使用时会重新初始化。
        """
        self._initialized = False


@dataclass(frozen=True, slots=True)
class Result(Generic[T]):
    """
    操作结果封装 - 替代异常的错误处理方式

    封装操作成功/失败状态和返回值，使错误处理显式化。

    Example:
        >>> return Result.ok(value)
        >>> return Result.err("empty_edge")
        >>> if result:
        ...     print(result.value)
    """
    value: Optional[T] = None
    error: Optional[str] = None

    @property
    def is_success(self) -> bool:
        """操作是否成功"""
        return self.error is None

    @property
    def is_failure(self) -> bool:
        """操作是否失败"""
        return self.error is not None

    def __bool__(self) -> bool:
        return self.is_success

    def unwrap(self) -> T:
        """解包值，失败时抛出 RuntimeError"""
        if self.is_failure:
            raise RuntimeError(f"Cannot unwrap failed result: {self.error}")
        return self.value  # type: ignore

    @classmethod
    def ok(cls, value: T) -> 'Result[T]':
        """创建成功结果"""
        return cls(value=value)

    @classmethod
    def err(cls, error: str) -> 'Result[T]':
        """创建失败结果"""
        return cls(error=error)

