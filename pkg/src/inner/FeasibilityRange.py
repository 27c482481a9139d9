import itertools
import logging
from dataclasses import dataclass

import numpy as np

from ..config.Configs import SolverConfig
from ..core.analysis.LambdaFunctional import lambda_gradient, lambda_raw
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.Kernels import MemorylessKernel
from ..core.problem.SourcePmf import SourcePmf
from .SimplexDescent import dirichlet_rows, projected_gradient

MAX_DETERMINISTIC_KERNELS = 10 ** 5
ENUMERATION_CHUNK = 4096

logger = logging.getLogger(__name__)


@dataclass
class FeasibilityRange:
    """无记忆构造下的可行失真区间 [d_min, d_max]"""
    d_min: float
    d_max: float
    witness_min: MemorylessKernel
    witness_max: np.ndarray

    def to_dict(self) -> dict:
        return {
            'd_min': self.d_min,
            'd_max': self.d_max,
            'witness_min': self.witness_min.rows.tolist(),
            'witness_max': self.witness_max.tolist(),
        }


def restart_rng(seed: int, grid_index: int, restart: int, stream: int = 0) -> np.random.Generator:
    """由 (seed, 网格下标, 起点下标, 流) 派生的随机数发生器"""
    return np.random.default_rng(np.random.SeedSequence([seed, grid_index, restart, stream]))


def _best_deterministic(probs: np.ndarray, values: np.ndarray):
    """穷举全部 |Y|^|X| 个确定性信道"""
    X, Y = values.shape[0], values.shape[1]
    count = Y ** X
    if count > MAX_DETERMINISTIC_KERNELS:
        logger.warning(f"skipping {count} deterministic kernels (limit {MAX_DETERMINISTIC_KERNELS})")
        return None, np.inf
    xs = np.arange(X)
    pp = np.outer(probs, probs)
    best_value, best_map = np.inf, None
    assignments = itertools.product(range(Y), repeat=X)
    while True:
        chunk = np.array(list(itertools.islice(assignments, ENUMERATION_CHUNK)), dtype=np.int64)
        if chunk.size == 0:
            break
        # Λ(f) = Σ_{x,x'} p(x)p(x') d(x, f(x), f(x'))
        table = values[xs[None, :, None], chunk[:, :, None], chunk[:, None, :]]
        scores = np.einsum('nab,ab->n', table, pp)
        i = int(np.argmin(scores))
        if scores[i] < best_value:
            best_value, best_map = float(scores[i]), chunk[i].copy()
    rows = np.zeros((X, Y))
    rows[xs, best_map] = 1.0
    return rows, best_value


def _minimize_lambda(probs, values, cfg: SolverConfig):
    X, Y = values.shape[0], values.shape[1]
    starts = [np.full((X, Y), 1.0 / Y)]
    if X == Y:
        starts.append(0.9 * np.eye(Y) + 0.1 / Y)
    for r in range(cfg.restarts):
        starts.append(dirichlet_rows(restart_rng(cfg.seed, 0, r, stream=1), X, Y))

    def f(W):
        return lambda_raw(W, probs, values)

    def grad(W):
        return lambda_gradient(W, probs, values)

    best = None
    for W0 in starts:
        result = projected_gradient(f, grad, W0, max_iters=min(cfg.max_iters, 2000))
        if best is None or result.value < best.value:
            best = result
    return best.x, best.value


def _minimize_product(gram: np.ndarray, cfg: SolverConfig):
    """min_r rᵀ G r 在单纯形上"""
    Y = gram.shape[0]
    sym = gram + gram.T

    def f(r):
        v = r[0]
        return float(v @ gram @ v)

    def grad(r):
        return (sym @ r[0])[None, :]

    # 顶点
    diag = np.diag(gram)
    j = int(np.argmin(diag))
    best_r, best_value = np.eye(Y)[j], float(diag[j])
    starts = [np.full((1, Y), 1.0 / Y)]
    for r in range(cfg.restarts):
        starts.append(dirichlet_rows(restart_rng(cfg.seed, 0, r, stream=2), 1, Y))
    for r0 in starts:
        result = projected_gradient(f, grad, r0, max_iters=min(cfg.max_iters, 2000))
        if result.value < best_value:
            best_r, best_value = result.x[0], result.value
    return best_r, best_value


def feasibility_range(p: SourcePmf, d: DistortionTensor, cfg: SolverConfig) -> FeasibilityRange:
    """
    D_min = min_W Λ(W)：多起点投影梯度加确定性信道穷举。
    D_max = min_r Σ p(x) r(y) r(ŷ) d(x,y,ŷ)：单纯形上多起点下降加顶点枚举。
    """
    d.check_source(p)
    probs, values = p.probs, d.values

    rows, d_min = _minimize_lambda(probs, values, cfg)
    det_rows, det_value = _best_deterministic(probs, values)
    if det_rows is not None and det_value <= d_min:
        rows, d_min = det_rows, det_value

    gram = np.tensordot(probs, values, axes=([0], [0]))
    r, d_max = _minimize_product(gram, cfg)

    # 零速率信道本身也是一个候选
    if d_max < d_min:
        rows, d_min = np.tile(r, (values.shape[0], 1)), d_max

    witness_min = MemorylessKernel(rows / rows.sum(axis=1, keepdims=True))
    witness_max = r / r.sum()
    d_min = lambda_raw(witness_min.rows, probs, values)
    d_max = float(witness_max @ gram @ witness_max)
    logger.info(f"feasibility range: d_min={d_min:.6g}, d_max={d_max:.6g}")
    return FeasibilityRange(d_min=d_min, d_max=d_max, witness_min=witness_min, witness_max=witness_max)
