import logging
from dataclasses import dataclass

import numpy as np

from ..core.errors.Errors import ValidationError
from ..core.info.InfoTheory import conditional_entropy_bits, entropy_bits
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.Kernels import MarkovKernel
from ..core.problem.SourcePmf import SourcePmf, check_stochastic_rows

STATIONARY_TOL = 1e-10
MAX_ITERATIONS = 10 ** 6

logger = logging.getLogger(__name__)


@dataclass
class StationaryDistribution:
    """输出链的平稳分布及收敛信息"""
    pi: np.ndarray
    converged: bool
    iterations: int
    residual: float


@dataclass
class StationaryAnalysis:
    """平稳分析结果"""
    pi_y: np.ndarray
    rate_bits: float
    distortion: float
    converged: bool
    iterations: int


def _check_kernel(K: MarkovKernel, p: SourcePmf) -> None:
    if K.x_size != p.size:
        raise ValidationError(f"kernel has {K.x_size} input symbols but the source has {p.size}")


def induced_output_chain(K: MarkovKernel, p: SourcePmf) -> np.ndarray:
    """T(y|ŷ) = Σ_x p(x) K(y|x,ŷ)，行下标为 ŷ"""
    _check_kernel(K, p)
    return np.tensordot(p.probs, K.table, axes=([0], [0]))


def _residual(pi: np.ndarray, T: np.ndarray) -> float:
    return float(np.abs(pi @ T - pi).sum())


def stationary_distribution(T: np.ndarray, tol: float = STATIONARY_TOL,
                            max_iterations: int = MAX_ITERATIONS) -> StationaryDistribution:
    """
    从均匀分布出发的幂迭代（矩阵平方加速），同时维护 Cesàro 平均以处理周期链。
    到达上限仍未收敛时返回 converged=False 的结果。
    """
    T = check_stochastic_rows(T, "transition matrix")
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValidationError(f"transition matrix must be square, got shape {T.shape}")
    size = T.shape[0]
    start = np.full(size, 1.0 / size)

    residual = _residual(start, T)
    if residual <= tol:
        return StationaryDistribution(start, True, 0, residual)

    power = T.copy()            # T^m
    average = np.eye(size)      # (1/m) Σ_{k<m} T^k
    m = 1
    best = start
    while m < max_iterations:
        average = 0.5 * average @ (np.eye(size) + power)
        power = power @ power
        m *= 2
        power /= power.sum(axis=1, keepdims=True)

        for candidate in (start @ power, start @ average):
            candidate = candidate / candidate.sum()
            r = _residual(candidate, T)
            if r < residual:
                best, residual = candidate, r
        if residual <= tol:
            logger.debug(f"stationary distribution converged after {m} steps (residual {residual:.2e})")
            return StationaryDistribution(best, True, m, residual)

    logger.warning(f"stationary distribution did not converge in {m} steps (residual {residual:.2e})")
    return StationaryDistribution(best, False, m, residual)


def stationary_joint(K: MarkovKernel, p: SourcePmf, pi: np.ndarray) -> np.ndarray:
    """四元联合分布，下标 (x̂, ŷ, x, y)"""
    table = K.table
    # π_XY(x̂, ŷ) = p(x̂) Σ_ŷ' π(ŷ') K(ŷ | x̂, ŷ')
    previous = p.probs[:, None] * np.tensordot(pi, table, axes=([0], [1]))
    step = p.probs[:, None, None] * table
    return previous[:, :, None, None] * np.transpose(step, (1, 0, 2))[None, :, :, :]


def _rate_from_joint(joint: np.ndarray, p: SourcePmf) -> float:
    # H(X) + H(Y₂|Y₁) − H(X₂,Y₂|X₁,Y₁)
    h_x = entropy_bits(p.probs)
    h_y = conditional_entropy_bits(joint.sum(axis=(0, 2)), given_axes=(0,))
    h_xy = conditional_entropy_bits(joint, given_axes=(0, 1))
    return max(0.0, h_x + h_y - h_xy)


def _distortion_from(K: MarkovKernel, p: SourcePmf, d: DistortionTensor, pi: np.ndarray) -> float:
    if d.x_size != K.x_size or d.y_size != K.y_size:
        raise ValidationError(
            f"tensor shape {d.values.shape} does not match kernel shape {K.table.shape}"
        )
    # E = Σ π(ŷ) p(x) K(y|x,ŷ) d(x,y,ŷ)
    return float(np.einsum('z,x,xzy,xyz->', pi, p.probs, K.table, d.values))


def stationary_rate(K: MarkovKernel, p: SourcePmf) -> float:
    """可达速率（比特）"""
    stat = stationary_distribution(induced_output_chain(K, p))
    return _rate_from_joint(stationary_joint(K, p, stat.pi), p)


def stationary_distortion(K: MarkovKernel, p: SourcePmf, d: DistortionTensor) -> float:
    """平稳期望失真"""
    stat = stationary_distribution(induced_output_chain(K, p))
    return _distortion_from(K, p, d, stat.pi)


def analyze_kernel(K: MarkovKernel, p: SourcePmf, d: DistortionTensor) -> StationaryAnalysis:
    """一次求平稳分布，返回速率、失真与收敛标志"""
    stat = stationary_distribution(induced_output_chain(K, p))
    return StationaryAnalysis(
        pi_y=stat.pi,
        rate_bits=_rate_from_joint(stationary_joint(K, p, stat.pi), p),
        distortion=_distortion_from(K, p, d, stat.pi),
        converged=stat.converged,
        iterations=stat.iterations,
    )
