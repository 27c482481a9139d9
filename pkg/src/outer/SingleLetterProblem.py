from dataclasses import dataclass

import numpy as np

from ..core.errors.Errors import SizeGuardError, ValidationError
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.SourcePmf import SourcePmf

MAX_TWO_LETTER_ENTRIES = 10 ** 6


@dataclass(frozen=True, eq=False)
class SingleLetterProblem:
    """经典单字母率失真问题：R = rate_scale·I，D = distortion_scale·E[d̃]"""
    source: SourcePmf
    repro_size: int
    dist: np.ndarray
    rate_scale: float = 1.0
    distortion_scale: float = 1.0

    def __post_init__(self):
        arr = np.array(self.dist, dtype=float)
        if arr.shape != (self.source.size, self.repro_size):
            raise ValidationError(
                f"distortion matrix shape {arr.shape} does not match ({self.source.size}, {self.repro_size})"
            )
        if not np.all(np.isfinite(arr)):
            raise ValidationError("single-letter distortion must be finite")
        if self.rate_scale not in (1.0, 0.5) or self.distortion_scale <= 0:
            raise ValidationError(f"unsupported scales ({self.rate_scale}, {self.distortion_scale})")
        arr.setflags(write=False)
        object.__setattr__(self, 'dist', arr)

    @property
    def min_distortion(self) -> float:
        """Σ_x p(x) min_y d̃(x,y)，已乘 distortion_scale"""
        return self.distortion_scale * float(self.source.probs @ self.dist.min(axis=1))

    @property
    def zero_rate_distortion(self) -> float:
        """min_y Σ_x p(x) d̃(x,y)，已乘 distortion_scale"""
        return self.distortion_scale * float((self.source.probs @ self.dist).min())

    @classmethod
    def classical(cls, source: SourcePmf, dist) -> 'SingleLetterProblem':
        arr = np.asarray(dist, dtype=float)
        return cls(source, arr.shape[1], arr)


def product_relaxation(p: SourcePmf, d: DistortionTensor) -> SingleLetterProblem:
    """再现字母表 𝒴×𝒴，d̃(x,(y,ŷ)) = d(x,y,ŷ)"""
    d.check_source(p)
    Y = d.y_size
    return SingleLetterProblem(p, Y * Y, d.values.reshape(d.x_size, Y * Y))


def two_letter_relaxation(p: SourcePmf, d: DistortionTensor) -> SingleLetterProblem:
    """
    信源 p⊗p，再现字母表 𝒴³ 下标 (y₁,y₂,ŷ₁)，
    d̃((x₁,x₂),(y₁,y₂,ŷ₁)) = d(x₁,y₁,ŷ₁) + d(x₂,y₂,y₁)，速率与失真各乘 ½。
    """
    d.check_source(p)
    X, Y = d.x_size, d.y_size
    entries = X * X * Y ** 3
    if entries > MAX_TWO_LETTER_ENTRIES:
        raise SizeGuardError(
            f"two-letter relaxation needs {entries} table entries (limit {MAX_TWO_LETTER_ENTRIES}); "
            f"use a smaller alphabet"
        )
    v = d.values
    # 轴顺序 (x₁, x₂, y₁, y₂, ŷ₁)
    first = v[:, None, :, None, :]
    second = np.transpose(v, (0, 2, 1))[None, :, :, :, None]
    table = (first + second).reshape(X * X, Y ** 3)
    source = SourcePmf(np.outer(p.probs, p.probs).ravel())
    return SingleLetterProblem(source, Y ** 3, table, rate_scale=0.5, distortion_scale=0.5)
