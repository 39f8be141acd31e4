"""
配置模块 - 统一配置管理

基于 Pydantic Settings 的配置管理，支持 .env 文件和环境变量。

配置加载优先级（从高到低）:
    1. 环境变量
    2. .env 文件
    3. 默认值

使用示例:
    >>> from plugins.common import config
    >>>
    >>> # 读取配置
    >>> budget = config.gowers_budget
    >>>
    >>> # 修改配置（运行时生效，不保存到文件）
    >>> config.threads = 8

环境变量:
    所有配置项都可通过环境变量设置，前缀为 LOWDEG_:
    - LOWDEG_GOWERS_BUDGET
    - LOWDEG_THREADS
    - LOWDEG_RM2_MAX_N
    - ...

扩展指南:
    如需添加新配置项:
    1. 在 ToolkitConfig 类中添加字段
    2. 使用 Field(default=xxx) 设置默认值和验证
    3. 预算类字段在计算入口通过 ensure_budget() 检查
"""

from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


# 计算项目根目录
_CURRENT_DIR = Path(__file__).parent
_PROJECT_ROOT = _CURRENT_DIR.parent.parent
_ENV_FILE_PATH = _PROJECT_ROOT / ".env"


class ToolkitConfig(BaseSettings):
    """
    工具箱配置类

    所有配置项的集中定义，支持从 .env 文件和环境变量加载。

    配置项分类:
        - 精确计算预算: 维度上限、运算量上限
        - 采样: 随机流分块大小、线程数
        - 解码器参数: 重启次数、阈值比例
        - 功能开关与调试

    使用方式:
        >>> from plugins.common import config
        >>> print(config.max_exact_n)
    """

    # ==================== 精确计算预算 ====================
    max_exact_n: int = Field(
        default=24,
        ge=1,
        le=24,
        description="精确运算允许的最大变量数 n"
    )
    gowers_budget: int = Field(
        default=2 ** 32,
        gt=0,
        description="精确 Gowers 范数、导数谱与解码器的运算预算（表读取次数）"
    )
    genavg_max_nt: int = Field(
        default=26,
        gt=0,
        description="精确广义平均允许的 n·t 上限"
    )
    matroid_max_rows: int = Field(
        default=20,
        gt=0,
        description="行空间穷举允许的最大行数"
    )
    rm2_max_n: int = Field(
        default=6,
        ge=1,
        description="RM(2) 穷举距离允许的最大 n"
    )
    hom_max_order: int = Field(
        default=2 ** 16,
        gt=0,
        description="有限 p-群的最大阶"
    )
    hom_pair_budget: int = Field(
        default=2 ** 16,
        gt=0,
        description="精确 BLR 一致率允许的 |G|^2 上限"
    )
    hom_enum_budget: int = Field(
        default=2 ** 20,
        gt=0,
        description="同态穷举允许的最大同态个数"
    )
    bound_max_n: int = Field(
        default=12,
        ge=1,
        description="命令行 --with-bound 计算精确范数的最大 n"
    )

    # ==================== 采样与并行 ====================
    block_size: int = Field(
        default=4096,
        gt=0,
        description="每个随机流分块的试验次数"
    )
    chunk_elements: int = Field(
        default=2 ** 22,
        gt=0,
        description="批量内核单块最多处理的数组元素数"
    )
    threads: Optional[int] = Field(
        default=None,
        ge=1,
        description="工作线程数，None 表示使用物理 CPU 数"
    )

    # ==================== 解码器参数 ====================
    decoder_restarts: int = Field(
        default=50,
        gt=0,
        description="线性映射拟合的随机重启次数"
    )
    decoder_threshold_ratio: float = Field(
        default=0.5,
        gt=0.0,
        description="默认权重阈值 = 平均权重 × 该比例"
    )
    decoder_oracle_max_n: int = Field(
        default=3,
        ge=0,
        le=4,
        description="线性映射穷举（oracle 模式）允许的最大 n"
    )

    # ==================== 二分判定 ====================
    dichotomy_confidence: float = Field(
        default=0.95,
        gt=0.0,
        lt=1.0,
        description="二分判定默认置信度"
    )

    # ==================== 功能开关 ====================
    core_enabled: bool = Field(default=True, description="函数生成与谱分析命令开关")
    gowers_enabled: bool = Field(default=True, description="Gowers 范数命令开关")
    genavg_enabled: bool = Field(default=True, description="广义平均与矩阵约化命令开关")
    testers_enabled: bool = Field(default=True, description="随机测试命令开关")
    rm2_enabled: bool = Field(default=True, description="RM(2) 距离命令开关")
    decoder_enabled: bool = Field(default=True, description="二次解码命令开关")
    hom_enabled: bool = Field(default=True, description="同态测试命令开关")

    # ==================== 调试配置 ====================
    debug_mode: bool = Field(
        default=False,
        description="全局调试模式开关（日志级别降为 DEBUG）"
    )
    log_level: str = Field(
        default="WARNING",
        description="日志级别"
    )

    # Pydantic 配置
    model_config = SettingsConfigDict(
        env_file=str(_ENV_FILE_PATH),
        env_prefix="LOWDEG_",
        case_sensitive=False,
        extra="ignore",
        env_file_encoding="utf-8"
    )

    @property
    def effective_log_level(self) -> str:
        """调试模式下强制 DEBUG"""
        return "DEBUG" if self.debug_mode else self.log_level

    def is_enabled(self, feature: str) -> bool:
        """
        检查功能是否开启

        Args:
            feature: 功能名称，如 "gowers", "hom"

        Returns:
            功能是否开启（默认 True）
        """
        if not feature:
            return True
        return getattr(self, f"{feature}_enabled", True)


# 全局配置实例
# 导入时自动加载 .env 文件
config = ToolkitConfig()
