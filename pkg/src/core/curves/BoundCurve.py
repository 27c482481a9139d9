from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..errors.Errors import ValidationError


class BoundId(Enum):
    """界的标识"""
    R_I1 = "R_I1"
    R_I2 = "R_I2"
    ENV_I1 = "ENV_I1"
    ENV_I2 = "ENV_I2"
    R_O1 = "R_O1"
    R_O2 = "R_O2"
    THM3 = "THM3"
    R1 = "R1"
    R2 = "R2"

    @property
    def is_inner(self) -> bool:
        return self in (BoundId.R_I1, BoundId.R_I2, BoundId.ENV_I1, BoundId.ENV_I2, BoundId.R2)

    @classmethod
    def parse(cls, name: str) -> 'BoundId':
        key = name.strip().upper()
        try:
            return cls(key)
        except ValueError:
            raise ValidationError(f"unknown bound '{name}', expected one of {[b.value for b in cls]}") from None


@dataclass
class RDPoint:
    """曲线上的一个 (D, R) 点；不可行时 rate 为 None"""
    distortion: float
    rate: Optional[float]
    feasible: bool = True
    converged: bool = True
    iterations: int = 0
    slope: Optional[float] = None
    intercept: Optional[float] = None
    witness: Any = None
    meta: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def infeasible(cls, distortion: float, witness: Any = None, **meta) -> 'RDPoint':
        return cls(distortion=float(distortion), rate=None, feasible=False, witness=witness, meta=dict(meta))

    @property
    def winning_term(self) -> Optional[str]:
        return self.meta.get('winning_term')

    def with_distortion(self, distortion: float) -> 'RDPoint':
        return replace(self, distortion=float(distortion), meta=dict(self.meta))


@dataclass
class BoundCurve:
    """按 D 严格递增排列的 (D, R) 样本"""
    bound_id: BoundId
    points: List[RDPoint]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        ds = [p.distortion for p in self.points]
        if any(b <= a for a, b in zip(ds, ds[1:])):
            raise ValidationError(f"{self.bound_id.value} curve distortions must be strictly increasing")

    @property
    def distortions(self) -> np.ndarray:
        return np.array([p.distortion for p in self.points], dtype=float)

    @property
    def rates(self) -> np.ndarray:
        """不可行点为 NaN"""
        return np.array([p.rate if p.feasible else np.nan for p in self.points], dtype=float)

    @property
    def feasible_mask(self) -> np.ndarray:
        return np.array([p.feasible for p in self.points], dtype=bool)

    def finite_points(self) -> List[RDPoint]:
        return [p for p in self.points if p.feasible]

    def value_at(self, D: float) -> Optional[float]:
        """在可行样本间线性插值；超出右端取最后一个值，左端之外返回 None"""
        pts = self.finite_points()
        if not pts:
            return None
        ds = np.array([p.distortion for p in pts])
        rs = np.array([p.rate for p in pts])
        if D < ds[0] - 1e-12:
            return None
        return float(np.interp(D, ds, rs))

    def is_non_increasing(self, tol: float = 1e-6) -> bool:
        rs = self.rates[self.feasible_mask]
        return bool(np.all(np.diff(rs) <= tol))

    def is_convex(self, tol: float = 1e-9) -> bool:
        """离散凸性：相邻斜率不减"""
        pts = self.finite_points()
        if len(pts) < 3:
            return True
        ds = np.array([p.distortion for p in pts])
        rs = np.array([p.rate for p in pts])
        slopes = np.diff(rs) / np.diff(ds)
        return bool(np.all(np.diff(slopes) >= -tol))

    def non_converged(self) -> List[RDPoint]:
        return [p for p in self.points if not p.converged]


def check_grid(grid: Sequence[float]) -> np.ndarray:
    """D 网格必须非空且严格递增"""
    arr = np.asarray(grid, dtype=float).ravel()
    if arr.size == 0:
        raise ValidationError("distortion grid must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("distortion grid has non-finite entries")
    if np.any(np.diff(arr) <= 0):
        raise ValidationError("distortion grid must be strictly increasing")
    return arr
