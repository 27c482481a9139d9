from dataclasses import dataclass
from typing import Callable

import numpy as np


def simplex_projection_rowwise(C: np.ndarray) -> np.ndarray:
    """每行投影到概率单纯形：min ||x − c||² s.t. Σx = 1, x ≥ 0"""
    C = np.atleast_2d(np.asarray(C, dtype=float))
    n = C.shape[1]
    a = -np.sort(-C, axis=1)
    lambdas = (np.cumsum(a, axis=1) - 1.0) / np.arange(1, n + 1)
    # 最后一个满足 a_k > λ_k 的位置
    k = n - 1 - np.argmax((a > lambdas)[:, ::-1], axis=1)
    theta = lambdas[np.arange(C.shape[0]), k]
    return np.maximum(C - theta[:, None], 0.0)


@dataclass
class DescentResult:
    x: np.ndarray
    value: float
    iterations: int
    converged: bool


def projected_gradient(f: Callable[[np.ndarray], float],
                       grad: Callable[[np.ndarray], np.ndarray],
                       x0: np.ndarray,
                       max_iters: int = 2000,
                       tol: float = 1e-12,
                       step: float = 1.0) -> DescentResult:
    """按行单纯形约束下的投影梯度下降，Armijo 回溯步长"""
    x = simplex_projection_rowwise(x0)
    value = f(x)
    for it in range(1, max_iters + 1):
        g = grad(x)
        t = step
        while True:
            candidate = simplex_projection_rowwise(x - t * g)
            new_value = f(candidate)
            decrease = float(np.sum(g * (x - candidate)))
            if new_value <= value - 1e-4 * decrease or t < 1e-12:
                break
            t *= 0.5
        if new_value > value:
            return DescentResult(x, value, it, True)
        gain = value - new_value
        x, value = candidate, new_value
        step = min(4.0 * t, 1e6)
        if gain <= tol * max(1.0, abs(value)):
            return DescentResult(x, value, it, True)
    return DescentResult(x, value, max_iters, False)


def dirichlet_rows(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """每行独立的均匀 Dirichlet 样本"""
    return rng.dirichlet(np.ones(cols), size=rows)
