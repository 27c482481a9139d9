import logging
import threading
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp

from ..config.Configs import SolverConfig
from ..core.analysis.LambdaFunctional import effective_distortion, lambda_gradient, lambda_raw
from ..core.curves.BoundCurve import RDPoint
from ..core.info.InfoTheory import mutual_information_bits
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.Kernels import MemorylessKernel
from ..core.problem.SourcePmf import SourcePmf
from .FeasibilityRange import FeasibilityRange, feasibility_range, restart_rng
from .SimplexDescent import dirichlet_rows, simplex_projection_rowwise

FEASIBILITY_TOL = 1e-9
LN2 = np.log(2.0)
WARM_START_MIX = 1e-3
MAX_POLISH_COORDINATES = 256

logger = logging.getLogger(__name__)


@dataclass
class KernelSample:
    """某个斜率下的不动点解"""
    slope: float
    rate: float
    distortion: float
    rows: np.ndarray
    converged: bool
    iterations: int
    restart: int

    @property
    def key(self):
        return (self.rate, self.distortion)


def kernel_rate(rows: np.ndarray, probs: np.ndarray) -> float:
    return mutual_information_bits(probs[:, None] * rows)


class MemorylessSolver:
    """
    R_I2(D) = min I(X;Y) s.t. Λ(W) ≤ D。
    对每个起点沿斜率 β 扫描 I + β·Λ 的不动点（W ∝ p_Y·2^{−β·d_eff}），
    再在目标 D 附近二分斜率，小问题上用 SLSQP 精修。所有返回值都经过精确重算。
    """

    def __init__(self, p: SourcePmf, d: DistortionTensor, cfg: SolverConfig,
                 feasibility: Optional[FeasibilityRange] = None):
        d.check_source(p)
        self.p = p
        self.d = d
        self.cfg = cfg
        self._feasibility = feasibility
        self._frontier: Optional[List[List[KernelSample]]] = None
        self._lock = threading.Lock()
        self.logger = logging.getLogger(__name__)

    @property
    def feasibility(self) -> FeasibilityRange:
        with self._lock:
            if self._feasibility is None:
                self._feasibility = feasibility_range(self.p, self.d, self.cfg)
            return self._feasibility

    def slopes(self) -> np.ndarray:
        lo, hi = self.cfg.slope_range
        return np.logspace(np.log2(lo), np.log2(hi), self.cfg.slope_count, base=2.0)

    def _evaluate(self, rows: np.ndarray):
        probs = self.p.probs
        return kernel_rate(rows, probs), lambda_raw(rows, probs, self.d.values)

    def fixed_point(self, slope: float, rows: np.ndarray, restart: int = 0) -> KernelSample:
        """I + slope·Λ 的阻尼不动点迭代，Lagrangian 单调不增"""
        probs, values = self.p.probs, self.d.values
        W = (1.0 - WARM_START_MIX) * rows + WARM_START_MIX / rows.shape[1]
        rate, dist = self._evaluate(W)
        value = rate + slope * dist
        converged = False
        it = 0
        for it in range(1, self.cfg.max_iters + 1):
            p_y = probs @ W
            with np.errstate(divide='ignore'):
                logits = np.log(p_y)[None, :] - slope * LN2 * effective_distortion(W, probs, values)
            target = np.exp(logits - logsumexp(logits, axis=1, keepdims=True))

            t = 1.0
            while True:
                candidate = (1.0 - t) * W + t * target
                c_rate, c_dist = self._evaluate(candidate)
                c_value = c_rate + slope * c_dist
                if c_value <= value or t < 1e-6:
                    break
                t *= 0.5
            if c_value > value:
                converged = True
                break
            change = value - c_value
            W, rate, dist, value = candidate, c_rate, c_dist, c_value
            if change < self.cfg.tol:
                converged = True
                break
        return KernelSample(slope, rate, dist, W, converged, it, restart)

    def _initial_rows(self, restart: int) -> np.ndarray:
        X, Y = self.d.x_size, self.d.y_size
        if restart == 0:
            return np.full((X, Y), 1.0 / Y)
        return dirichlet_rows(restart_rng(self.cfg.seed, 0, restart, stream=3), X, Y)

    def frontier(self) -> List[List[KernelSample]]:
        """每个起点一条温启动的斜率扫描路径（缓存）"""
        with self._lock:
            if self._frontier is None:
                paths = []
                for restart in range(self.cfg.restarts):
                    rows = self._initial_rows(restart)
                    path = []
                    for slope in self.slopes():
                        sample = self.fixed_point(float(slope), rows, restart)
                        path.append(sample)
                        rows = sample.rows
                    paths.append(path)
                    self.logger.debug(
                        f"restart {restart}: swept {len(path)} slopes, "
                        f"distortion {path[0].distortion:.4g} -> {path[-1].distortion:.4g}"
                    )
                self._frontier = paths
            return self._frontier

    def _refine(self, path: List[KernelSample], D: float) -> List[KernelSample]:
        """在跨越 D 的相邻斜率间二分"""
        found = []
        for lo, hi in zip(path, path[1:]):
            if lo.distortion > D + FEASIBILITY_TOL >= hi.distortion:
                a, b = np.log2(lo.slope), np.log2(hi.slope)
                rows = hi.rows
                for _ in range(self.cfg.refine_steps):
                    mid = 0.5 * (a + b)
                    sample = self.fixed_point(float(2.0 ** mid), rows, hi.restart)
                    if sample.distortion <= D + FEASIBILITY_TOL:
                        found.append(sample)
                        b, rows = mid, sample.rows
                    else:
                        a = mid
        return found

    def _polish(self, start: KernelSample, D: float) -> Optional[KernelSample]:
        """小问题上以 SLSQP 直接求解 min I s.t. Λ ≤ D"""
        probs, values = self.p.probs, self.d.values
        X, Y = values.shape[0], values.shape[1]
        shape = (X, Y)
        bound = D - 1e-10

        def rate(x):
            return kernel_rate(np.clip(x.reshape(shape), 0.0, None), probs)

        def rate_grad(x):
            W = np.clip(x.reshape(shape), 1e-12, None)
            p_y = probs @ W
            return (probs[:, None] * np.log2(W / p_y[None, :])).ravel()

        row_sums = np.kron(np.eye(X), np.ones((1, Y)))
        constraints = [
            {'type': 'ineq',
             'fun': lambda x: bound - lambda_raw(x.reshape(shape), probs, values),
             'jac': lambda x: -lambda_gradient(x.reshape(shape), probs, values).ravel()},
            {'type': 'eq',
             'fun': lambda x: x.reshape(shape).sum(axis=1) - 1.0,
             'jac': lambda x: row_sums},
        ]
        try:
            result = minimize(rate, start.rows.ravel(), jac=rate_grad, method='SLSQP',
                              bounds=[(0.0, 1.0)] * (X * Y), constraints=constraints,
                              options={'maxiter': 200, 'ftol': 1e-12})
        except (ValueError, np.linalg.LinAlgError) as e:
            self.logger.debug(f"polish failed at D={D:.6g}: {e}")
            return None
        rows = simplex_projection_rowwise(result.x.reshape(shape))
        r, dist = self._evaluate(rows)
        if dist > D + FEASIBILITY_TOL:
            return None
        return KernelSample(start.slope, r, dist, rows, bool(result.success), int(result.nit), start.restart)

    def solve(self, D: float) -> RDPoint:
        """单点 R_I2(D)；低于 d_min 时返回不可行点（附最优失真见证）"""
        feas = self.feasibility
        probs, values = self.p.probs, self.d.values
        X = values.shape[0]

        if D < feas.d_min - FEASIBILITY_TOL:
            return RDPoint.infeasible(D, witness=feas.witness_min, best_distortion=feas.d_min)
        if D >= feas.d_max:
            rows = np.tile(feas.witness_max, (X, 1))
            return self._certified(D, KernelSample(0.0, 0.0, feas.d_max, rows, True, 0, -1))

        paths = self.frontier()
        r_min, d_min = self._evaluate(feas.witness_min.rows)
        candidates = [KernelSample(np.inf, r_min, d_min, feas.witness_min.rows, True, 0, -1)]
        for path in paths:
            candidates.extend(s for s in path if s.distortion <= D + FEASIBILITY_TOL)

        # 只在最有希望的两条路径上细化
        ranked = sorted(
            range(len(paths)),
            key=lambda i: min((s.key for s in paths[i] if s.distortion <= D + FEASIBILITY_TOL),
                              default=(np.inf, np.inf))
        )
        for i in ranked[:2]:
            candidates.extend(self._refine(paths[i], D))

        best = min(candidates, key=lambda s: s.key)
        if self.cfg.polish and values.shape[0] * values.shape[1] <= MAX_POLISH_COORDINATES:
            polished = self._polish(best, D)
            if polished is not None and polished.rate < best.rate - 1e-12:
                best = polished
        return self._certified(D, best)

    def _certified(self, D: float, sample: KernelSample) -> RDPoint:
        rows = sample.rows / sample.rows.sum(axis=1, keepdims=True)
        rate, dist = self._evaluate(rows)
        if dist > D + FEASIBILITY_TOL:
            self.logger.warning(f"witness at D={D:.6g} re-evaluated to {dist:.6g}; reporting infeasible")
            return RDPoint.infeasible(D, witness=MemorylessKernel(rows), best_distortion=dist)
        return RDPoint(
            distortion=float(D),
            rate=rate,
            feasible=True,
            converged=sample.converged,
            iterations=sample.iterations,
            slope=None if not np.isfinite(sample.slope) else sample.slope,
            witness=MemorylessKernel(rows),
            meta={'restart': sample.restart, 'witness_distortion': dist},
        )


def rate_inner_memoryless(p: SourcePmf, d: DistortionTensor, D: float, cfg: SolverConfig) -> RDPoint:
    """单点调用；整条曲线请复用同一个 MemorylessSolver"""
    return MemorylessSolver(p, d, cfg).solve(D)
