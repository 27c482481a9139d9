import os
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ..core.errors.Errors import ConfigError, ValidationError


@dataclass(frozen=True)
class SolverConfig:
    """求解器配置"""
    restarts: int = 4  # 多起点数
    max_iters: int = 5000  # 单个斜率上的不动点迭代上限
    tol: float = 1e-10  # 收敛阈值
    penalty_schedule: Tuple[float, ...] = (10.0, 100.0, 1000.0, 10000.0)  # 罚系数递增序列
    seed: int = 0
    slope_count: int = 64  # 斜率扫描点数
    slope_range: Tuple[float, float] = (2.0 ** -8, 2.0 ** 8)  # 斜率扫描区间（比特每单位失真）
    refine_steps: int = 16  # 斜率二分次数
    search_iters: int = 400  # 直接搜索每个罚阶段的函数调用上限
    ba_max_iters: int = 100000  # Blahut–Arimoto 迭代上限
    polish: bool = True  # 小问题上做 SLSQP 精修

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError(f"solver.restarts must be at least 1, got {self.restarts}")
        if not self.tol > 0:
            raise ValidationError(f"solver.tol must be positive, got {self.tol}")
        if self.max_iters < 1 or self.ba_max_iters < 1 or self.search_iters < 1:
            raise ValidationError("solver iteration caps must be positive")
        if self.slope_count < 2:
            raise ValidationError(f"solver.slope_count must be at least 2, got {self.slope_count}")
        lo, hi = (float(v) for v in self.slope_range)
        if not 0 < lo < hi:
            raise ValidationError(f"solver.slope_range must satisfy 0 < low < high, got {self.slope_range}")
        object.__setattr__(self, 'slope_range', (lo, hi))
        if self.refine_steps < 0:
            raise ValidationError("solver.refine_steps must not be negative")
        schedule = tuple(float(v) for v in self.penalty_schedule)
        if not schedule or any(v <= 0 for v in schedule):
            raise ValidationError("solver.penalty_schedule must be a non-empty list of positive numbers")
        object.__setattr__(self, 'penalty_schedule', schedule)

    def to_dict(self) -> dict:
        return {
            'restarts': self.restarts,
            'max_iters': self.max_iters,
            'tol': self.tol,
            'penalty_schedule': list(self.penalty_schedule),
            'seed': self.seed,
            'slope_count': self.slope_count,
            'slope_range': list(self.slope_range),
            'refine_steps': self.refine_steps,
            'search_iters': self.search_iters,
            'ba_max_iters': self.ba_max_iters,
            'polish': self.polish,
        }


@dataclass(frozen=True)
class DistortionSpec:
    """失真定义：预设名加参数，或显式张量"""
    preset: Optional[str] = None  # 'fig2', 'gamma_hamming', 'gaussian'
    params: Tuple[Tuple[str, float], ...] = ()
    values: Optional[Tuple] = None  # 嵌套元组 (x, y, ŷ)

    def param(self, name: str) -> float:
        return dict(self.params)[name]

    @property
    def is_gaussian(self) -> bool:
        return self.preset == 'gaussian'


@dataclass(frozen=True)
class ProblemConfig:
    """问题配置"""
    distortion: DistortionSpec
    source: Optional[Tuple[float, ...]] = None
    y0: int = 0


@dataclass(frozen=True)
class GridConfig:
    """失真网格"""
    start: float = 0.0
    stop: float = 0.6
    count: int = 61

    def __post_init__(self):
        if self.count < 2:
            raise ValidationError(f"grid.count must be at least 2, got {self.count}")
        if not self.stop > self.start:
            raise ValidationError(f"grid.stop ({self.stop}) must exceed grid.start ({self.start})")

    @classmethod
    def parse(cls, text: str) -> 'GridConfig':
        """解析 'start:stop:count'"""
        parts = text.split(':')
        if len(parts) != 3:
            raise ValidationError(f"grid must look like start:stop:count, got '{text}'")
        try:
            return cls(start=float(parts[0]), stop=float(parts[1]), count=int(parts[2]))
        except ValueError as e:
            raise ValidationError(f"cannot parse grid '{text}': {e}") from None

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SystemConfig:
    """系统配置"""
    log_level: str = "INFO"
    log_file: Optional[str] = None
    threads: Optional[int] = None

    def worker_count(self) -> int:
        """SRD_THREADS 优先，其次配置，最后为可用核数"""
        env = os.environ.get('SRD_THREADS')
        if env:
            try:
                value = int(env)
            except ValueError:
                raise ConfigError(f"must be an integer, got '{env}'", field='SRD_THREADS') from None
            if value < 1:
                raise ConfigError(f"must be at least 1, got {value}", field='SRD_THREADS')
            return value
        if self.threads:
            return self.threads
        return os.cpu_count() or 1


@dataclass(frozen=True)
class OracleConfig:
    """有限码长穷举配置"""
    n: int
    num_messages: int
    y0: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"blocklength must be at least 1, got {self.n}")
        if self.num_messages < 1:
            raise ValidationError(f"number of messages must be at least 1, got {self.num_messages}")


@dataclass(frozen=True)
class MasterConfig:
    """主配置"""
    problem: ProblemConfig
    solver: SolverConfig = field(default_factory=SolverConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    system: SystemConfig = field(default_factory=SystemConfig)
