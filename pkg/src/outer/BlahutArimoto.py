import logging
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from ..config.Configs import SolverConfig
from ..core.curves.BoundCurve import RDPoint
from ..core.errors.Errors import ValidationError
from ..core.info.InfoTheory import mutual_information_bits
from .SingleLetterProblem import SingleLetterProblem

LN2 = np.log(2.0)
PRUNE_MASS = 1e-14

logger = logging.getLogger(__name__)


def dual_intercept(prob: SingleLetterProblem, slope: float, q: np.ndarray) -> float:
    """
    由输出分布 q 构造的下支撑线截距 b，对所有 D 有 R̃(D) ≥ slope·D + b（未缩放）。
    λ(x) = 1/Σ_y q(y) 2^{slope·d̃}，c(y) = Σ_x p(x) λ(x) 2^{slope·d̃}，b = Σ p log₂λ − log₂ max c。
    """
    probs = prob.source.probs
    with np.errstate(divide='ignore'):
        log_q = np.log(q)
    exponent = slope * LN2 * prob.dist
    log_lambda = -logsumexp(log_q[None, :] + exponent, axis=1)
    support = probs > 0
    log_c = logsumexp(np.log(probs[support])[:, None] + log_lambda[support, None] + exponent[support], axis=0)
    return float((probs[support] @ log_lambda[support] - np.max(log_c)) / LN2)


def _zero_slope_point(prob: SingleLetterProblem) -> RDPoint:
    column = prob.source.probs @ prob.dist
    y = int(np.argmin(column))
    q = np.zeros(prob.repro_size)
    q[y] = 1.0
    return RDPoint(
        distortion=prob.distortion_scale * float(column[y]),
        rate=0.0,
        slope=0.0,
        intercept=0.0,
        meta={'output_pmf': q},
    )


def blahut_arimoto(prob: SingleLetterProblem, slope: float, cfg: SolverConfig,
                   init_q: Optional[np.ndarray] = None, record_trace: bool = False) -> RDPoint:
    """
    I + |slope|·E[d̃] 的 Blahut–Arimoto 迭代（对数域）。slope ≤ 0，单位为比特每单位失真。
    返回缩放后的 (D, R)、缩放后的支撑线斜率与截距；迭代达到上限时 converged=False。
    """
    if slope > 0:
        raise ValidationError(f"slope must be non-positive, got {slope}")
    if slope == 0:
        return _zero_slope_point(prob)

    probs = prob.source.probs
    support = probs > 0
    log_p = np.log(probs[support])
    dist = prob.dist[support]
    exponent = slope * LN2 * dist

    q = np.full(prob.repro_size, 1.0 / prob.repro_size) if init_q is None else np.asarray(init_q, float)
    q = np.where(q < PRUNE_MASS, 0.0, q)
    q = q / q.sum()
    with np.errstate(divide='ignore'):
        log_q = np.log(q)

    trace = []
    rate_prev = np.inf
    converged = False
    it = 0
    W = None
    for it in range(1, cfg.ba_max_iters + 1):
        logits = log_q[None, :] + exponent
        log_z = logsumexp(logits, axis=1, keepdims=True)
        # 当前 q 下的最优信道对应的 Lagrangian 值（比特）
        trace.append(float(-(np.exp(log_p) @ log_z[:, 0]) / LN2))
        log_W = logits - log_z
        W = np.exp(log_W)
        rate = mutual_information_bits(np.exp(log_p)[:, None] * W)
        log_q = logsumexp(log_p[:, None] + log_W, axis=0)
        q = np.exp(log_q)
        pruned = q < PRUNE_MASS
        if pruned.any():
            q[pruned] = 0.0
            q /= q.sum()
            with np.errstate(divide='ignore'):
                log_q = np.log(q)
        if abs(rate - rate_prev) < cfg.tol:
            converged = True
            break
        rate_prev = rate

    if not converged:
        logger.warning(f"Blahut-Arimoto did not converge at slope {slope:.4g} after {it} iterations")

    joint = np.exp(log_p)[:, None] * W
    rate = mutual_information_bits(joint)
    distortion = float(np.sum(joint * dist))
    b = dual_intercept(prob, slope, q)
    meta = {'output_pmf': q}
    if record_trace:
        meta['lagrangian_trace'] = trace
    return RDPoint(
        distortion=prob.distortion_scale * distortion,
        rate=prob.rate_scale * rate,
        converged=converged,
        iterations=it,
        slope=slope * prob.rate_scale / prob.distortion_scale,
        intercept=prob.rate_scale * b,
        meta=meta,
    )
