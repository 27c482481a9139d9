from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..errors.Errors import ValidationError

PMF_TOL = 1e-12


def check_pmf(values: np.ndarray, name: str = "pmf", tol: float = PMF_TOL) -> np.ndarray:
    """校验概率向量（不做归一化修正）"""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValidationError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    if np.any(arr < 0):
        raise ValidationError(f"{name} has negative entries")
    total = float(arr.sum())
    if abs(total - 1.0) > tol:
        raise ValidationError(f"{name} sums to {total!r}, expected 1 within {tol}")
    return arr


def check_stochastic_rows(table: np.ndarray, name: str, tol: float = PMF_TOL) -> np.ndarray:
    """校验最后一维为概率分布的条件概率表"""
    arr = np.asarray(table, dtype=float)
    if arr.ndim < 2:
        raise ValidationError(f"{name} must have at least two axes, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    if np.any(arr < 0):
        raise ValidationError(f"{name} has negative entries")
    sums = arr.sum(axis=-1)
    worst = float(np.max(np.abs(sums - 1.0)))
    if worst > tol:
        raise ValidationError(f"{name} rows must sum to 1 within {tol} (worst deviation {worst:.3e})")
    return arr


@dataclass(frozen=True, eq=False)
class SourcePmf:
    """信源分布 p_X"""
    probs: np.ndarray

    def __post_init__(self):
        arr = check_pmf(self.probs, "source pmf").copy()
        arr.setflags(write=False)
        object.__setattr__(self, 'probs', arr)

    @classmethod
    def uniform(cls, size: int) -> 'SourcePmf':
        return cls(np.full(size, 1.0 / size))

    @classmethod
    def of(cls, values: Union['SourcePmf', Sequence[float], np.ndarray]) -> 'SourcePmf':
        return values if isinstance(values, SourcePmf) else cls(np.asarray(values, dtype=float))

    @property
    def size(self) -> int:
        return int(self.probs.shape[0])

    @property
    def is_uniform(self) -> bool:
        return bool(np.allclose(self.probs, 1.0 / self.size, rtol=0.0, atol=PMF_TOL))

    def __eq__(self, other) -> bool:
        return isinstance(other, SourcePmf) and np.array_equal(self.probs, other.probs)

    def __hash__(self) -> int:
        return hash(self.probs.tobytes())
