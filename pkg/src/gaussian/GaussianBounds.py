from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import norm

from ..core.curves.BoundCurve import BoundCurve, BoundId, RDPoint, check_grid
from ..core.errors.Errors import ValidationError
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.Kernels import MemorylessKernel
from ..core.problem.SourcePmf import SourcePmf
from ..core.analysis.LambdaFunctional import lambda_raw
from ..inner.FeasibilityRange import FeasibilityRange


@dataclass(frozen=True)
class GaussianSpec:
    """X ~ N(0, σ²)，d(x,y,ŷ) = (x−y)² + γ(x−ŷ)²"""
    sigma2: float
    gamma: float

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ValidationError(f"sigma2 must be positive, got {self.sigma2}")
        if not self.gamma > 0:
            raise ValidationError(f"gamma must be positive, got {self.gamma}")


def gaussian_feasibility(spec: GaussianSpec) -> Tuple[float, float]:
    """(d_min, d_zero_rate) = ((γ²+2γ)/(1+γ)·σ², (1+γ)·σ²)"""
    g = spec.gamma
    return (g * g + 2.0 * g) / (1.0 + g) * spec.sigma2, (1.0 + g) * spec.sigma2


def gaussian_rate_inner(spec: GaussianSpec, D: float) -> RDPoint:
    """R_I2(D) = ½ log₂((σ²/(1+γ)) / (D − d_min))，D ≥ (1+γ)σ² 时为 0"""
    d_min, d_zero = gaussian_feasibility(spec)
    if D >= d_zero:
        return RDPoint(float(D), 0.0)
    if D <= d_min:
        return RDPoint.infeasible(D, d_min=d_min)
    rate = 0.5 * np.log2((spec.sigma2 / (1.0 + spec.gamma)) / (D - d_min))
    return RDPoint(float(D), max(0.0, float(rate)))


def gaussian_curve(spec: GaussianSpec, grid: Sequence[float]) -> BoundCurve:
    D = check_grid(grid)
    d_min, d_zero = gaussian_feasibility(spec)
    points = [gaussian_rate_inner(spec, float(x)) for x in D]
    return BoundCurve(BoundId.R_I2, points, {
        'bound': BoundId.R_I2.value,
        'closed_form': True,
        'sigma2': spec.sigma2,
        'gamma': spec.gamma,
        'd_min': d_min,
        'd_zero_rate': d_zero,
    })


def quantized_gaussian_problem(spec: GaussianSpec, bins: int = 201,
                               span: float = 5.0) -> Tuple[SourcePmf, DistortionTensor, np.ndarray]:
    """
    ±span·σ 上的均匀分箱；每箱概率为密度质量并重新归一化，
    再现字母表取相同的箱中心。
    """
    if bins < 2:
        raise ValidationError(f"need at least two bins, got {bins}")
    sigma = np.sqrt(spec.sigma2)
    centers = np.linspace(-span * sigma, span * sigma, bins)
    half = 0.5 * (centers[1] - centers[0])
    edges = np.concatenate(([centers[0] - half], centers + half))
    mass = np.diff(norm.cdf(edges, scale=sigma))
    probs = mass / mass.sum()
    x = centers[:, None, None]
    y = centers[None, :, None]
    z = centers[None, None, :]
    values = (x - y) ** 2 + spec.gamma * (x - z) ** 2
    return SourcePmf(probs), DistortionTensor(values), centers


def quantized_feasibility(spec: GaussianSpec, p: SourcePmf, d: DistortionTensor,
                          centers: np.ndarray) -> FeasibilityRange:
    """
    离散化问题的可行区间见证，取连续情形的最优构造：
    y = x/(1+γ) 就近取箱中心给出 d_min 的上界，零点处的点质量给出 d_max 的上界。
    """
    targets = centers / (1.0 + spec.gamma)
    nearest = np.abs(targets[:, None] - centers[None, :]).argmin(axis=1)
    shrink = np.zeros((p.size, p.size))
    shrink[np.arange(p.size), nearest] = 1.0
    witness = MemorylessKernel(shrink)
    r = np.zeros(p.size)
    r[int(np.argmin(np.abs(centers)))] = 1.0
    gram = np.tensordot(p.probs, d.values, axes=([0], [0]))
    return FeasibilityRange(
        d_min=lambda_raw(witness.rows, p.probs, d.values),
        d_max=float(r @ gram @ r),
        witness_min=witness,
        witness_max=r,
    )
