import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..core.errors.Errors import ValidationError
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.Kernels import MarkovKernel
from ..core.problem.SourcePmf import SourcePmf
from .StationaryAnalysis import induced_output_chain

BATCH_COUNT = 100

logger = logging.getLogger(__name__)


@dataclass
class SimulationResult:
    """蒙特卡洛仿真结果"""
    empirical_distortion: float
    std_error: float
    n: int
    seed: int
    y0: int
    ergodic: bool = True
    recurrent_classes: List[List[int]] = field(default_factory=list)


def recurrent_classes(T: np.ndarray, atol: float = 0.0) -> List[List[int]]:
    """强连通分量中没有出边的那些（闭类）"""
    adjacency = np.asarray(T) > atol
    count, labels = connected_components(csr_matrix(adjacency), directed=True, connection='strong')
    closed = []
    for c in range(count):
        members = np.flatnonzero(labels == c)
        outside = np.flatnonzero(labels != c)
        if not adjacency[np.ix_(members, outside)].any():
            closed.append(sorted(int(m) for m in members))
    return sorted(closed)


def simulate_chain(K: MarkovKernel, p: SourcePmf, d: DistortionTensor, n: int,
                   seed: int, y0: int = 0) -> SimulationResult:
    """
    X_i ~ p 独立同分布，Y_i ~ K(·|X_i, Y_{i−1})，返回 (1/n) Σ d(X_i, Y_i, Y_{i−1})
    及分 100 批的批均值标准误差。相同 seed 输出相同。
    """
    if n < 1:
        raise ValidationError(f"simulation length must be at least 1, got {n}")
    if not 0 <= y0 < K.y_size:
        raise ValidationError(f"initial symbol {y0} outside the reproduction alphabet of size {K.y_size}")
    if d.x_size != K.x_size or d.y_size != K.y_size or p.size != K.x_size:
        raise ValidationError("kernel, source and tensor dimensions disagree")

    rng = np.random.default_rng(seed)
    xs = rng.choice(p.size, size=n, p=p.probs)
    us = rng.random(n)

    # 对每个可能的前一符号预先抽好下一符号，链本身只剩查表
    cumulative = np.cumsum(K.table, axis=2)
    cumulative[:, :, -1] = 1.0
    candidates = [
        np.minimum((cumulative[xs, prev, :] <= us[:, None]).sum(axis=1), K.y_size - 1).tolist()
        for prev in range(K.y_size)
    ]
    ys = np.empty(n, dtype=np.int64)
    prev = y0
    for i in range(n):
        prev = candidates[prev][i]
        ys[i] = prev

    previous = np.concatenate(([y0], ys[:-1]))
    costs = d.values[xs, ys, previous]
    empirical = float(costs.mean())

    batches = min(BATCH_COUNT, n)
    means = np.array([chunk.mean() for chunk in np.array_split(costs, batches)])
    std_error = float(means.std(ddof=1) / np.sqrt(batches)) if batches > 1 else 0.0

    classes = recurrent_classes(induced_output_chain(K, p))
    ergodic = len(classes) == 1
    if not ergodic:
        logger.warning(
            f"induced output chain has {len(classes)} recurrent classes; "
            f"the time average depends on the basin of y0={y0}"
        )
    return SimulationResult(
        empirical_distortion=empirical,
        std_error=std_error,
        n=n,
        seed=seed,
        y0=y0,
        ergodic=ergodic,
        recurrent_classes=classes,
    )
