import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.optimize import minimize

from ..config.Configs import SolverConfig
from ..core.curves.BoundCurve import RDPoint
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.Kernels import MarkovKernel, MemorylessKernel
from ..core.problem.SourcePmf import SourcePmf
from ..markov.StationaryAnalysis import analyze_kernel
from .FeasibilityRange import restart_rng
from .MemorylessSolver import FEASIBILITY_TOL, MemorylessSolver

logger = logging.getLogger(__name__)


def sticks_to_table(theta: np.ndarray, x_size: int, y_size: int) -> np.ndarray:
    """折棍参数 [0,1]^{X·Y·(Y−1)} 到核表 (x, ŷ, y)"""
    sticks = np.clip(theta, 0.0, 1.0).reshape(x_size, y_size, y_size - 1)
    table = np.empty((x_size, y_size, y_size))
    remaining = np.ones((x_size, y_size))
    for k in range(y_size - 1):
        table[:, :, k] = remaining * sticks[:, :, k]
        remaining = remaining * (1.0 - sticks[:, :, k])
    table[:, :, -1] = remaining
    return table


def table_to_sticks(table: np.ndarray) -> np.ndarray:
    """sticks_to_table 的逆映射；剩余质量为零处取 ½"""
    x_size, y_size = table.shape[0], table.shape[2]
    sticks = np.empty((x_size, y_size, y_size - 1))
    remaining = np.ones((x_size, y_size))
    for k in range(y_size - 1):
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = np.where(remaining > 1e-15, table[:, :, k] / remaining, 0.5)
        sticks[:, :, k] = np.clip(ratio, 0.0, 1.0)
        remaining = np.clip(remaining - table[:, :, k], 0.0, None)
    return sticks.ravel()


@dataclass
class MarkovCandidate:
    rate: float
    distortion: float
    table: np.ndarray
    converged: bool

    @property
    def key(self):
        return (self.rate, self.distortion)


class MarkovSolver:
    """
    R_I1(D)：在一阶记忆核上最小化平稳速率，约束平稳失真 ≤ D。
    外点二次罚函数配合有界 Powell 直接搜索，只记录经精确重算确认可行的核。
    起点包含 R_I2 的见证（提升为马尔可夫核），因此结果不超过 R_I2。
    """

    def __init__(self, p: SourcePmf, d: DistortionTensor, cfg: SolverConfig,
                 memoryless: Optional[MemorylessSolver] = None):
        self.p = p
        self.d = d
        self.cfg = cfg
        self.memoryless = memoryless or MemorylessSolver(p, d, cfg)
        self.logger = logging.getLogger(__name__)

    def _starts(self, D: float, grid_index: int, lifted: Optional[MemorylessKernel]) -> List[np.ndarray]:
        X, Y = self.d.x_size, self.d.y_size
        feas = self.memoryless.feasibility
        starts = []
        if lifted is not None:
            starts.append(table_to_sticks(MarkovKernel.from_memoryless(lifted).table))
        starts.append(table_to_sticks(MarkovKernel.from_memoryless(feas.witness_min).table))
        starts.append(table_to_sticks(MarkovKernel.constant(X, feas.witness_max).table))
        for restart in range(self.cfg.restarts):
            rng = restart_rng(self.cfg.seed, grid_index, restart, stream=4)
            starts.append(rng.random(X * Y * (Y - 1)))
        return starts

    def _search(self, theta0: np.ndarray, D: float, record: List[MarkovCandidate],
                best_infeasible: List[MarkovCandidate]) -> None:
        X, Y = self.d.x_size, self.d.y_size

        def evaluate(theta):
            table = sticks_to_table(theta, X, Y)
            analysis = analyze_kernel(MarkovKernel(table), self.p, self.d)
            candidate = MarkovCandidate(analysis.rate_bits, analysis.distortion, table, analysis.converged)
            if analysis.converged and analysis.distortion <= D + FEASIBILITY_TOL:
                if not record or candidate.key < record[0].key:
                    record[:] = [candidate]
            elif not best_infeasible or candidate.distortion < best_infeasible[0].distortion:
                best_infeasible[:] = [candidate]
            return analysis

        theta = np.clip(theta0, 0.0, 1.0)
        bounds = [(0.0, 1.0)] * theta.size
        for mu in self.cfg.penalty_schedule:
            def objective(t, mu=mu):
                a = evaluate(t)
                excess = max(0.0, a.distortion - D)
                return a.rate_bits + mu * excess ** 2

            result = minimize(objective, theta, method='Powell', bounds=bounds,
                              options={'maxfev': self.cfg.search_iters, 'xtol': 1e-6, 'ftol': 1e-10})
            theta = np.clip(result.x, 0.0, 1.0)

    def solve(self, D: float, grid_index: int = 0) -> RDPoint:
        """单点 R_I1(D)；找不到可行核时返回不可行点并附最小失真见证"""
        feas = self.memoryless.feasibility
        X = self.d.x_size
        if D >= feas.d_max:
            table = MarkovKernel.constant(X, feas.witness_max).table
            return self._certified(D, table, iterations=0)

        if self.d.y_size == 1:
            return RDPoint.infeasible(D, witness=MarkovKernel.constant(X, feas.witness_max), best_distortion=feas.d_max)

        reference = self.memoryless.solve(D)
        lifted = reference.witness if reference.feasible else None
        if reference.feasible and reference.rate <= 1e-12:
            return self._certified(D, MarkovKernel.from_memoryless(lifted).table, iterations=0)

        record: List[MarkovCandidate] = []
        best_infeasible: List[MarkovCandidate] = []
        if lifted is not None:
            a = analyze_kernel(MarkovKernel.from_memoryless(lifted), self.p, self.d)
            if a.converged and a.distortion <= D + FEASIBILITY_TOL:
                record.append(MarkovCandidate(a.rate_bits, a.distortion,
                                              MarkovKernel.from_memoryless(lifted).table, True))

        starts = self._starts(D, grid_index, lifted)
        for theta0 in starts:
            self._search(theta0, D, record, best_infeasible)
        self.logger.debug(f"R_I1 search at D={D:.6g}: {len(starts)} starts")

        if not record:
            witness = MarkovKernel(best_infeasible[0].table) if best_infeasible else None
            best_distortion = best_infeasible[0].distortion if best_infeasible else None
            self.logger.info(f"no feasible markov kernel at D={D:.6g}")
            return RDPoint.infeasible(D, witness=witness, best_distortion=best_distortion)
        return self._certified(D, record[0].table, iterations=len(starts))

    def _certified(self, D: float, table: np.ndarray, iterations: int) -> RDPoint:
        kernel = MarkovKernel(table / table.sum(axis=2, keepdims=True))
        analysis = analyze_kernel(kernel, self.p, self.d)
        if not analysis.converged or analysis.distortion > D + FEASIBILITY_TOL:
            return RDPoint.infeasible(D, witness=kernel, best_distortion=analysis.distortion)
        return RDPoint(
            distortion=float(D),
            rate=analysis.rate_bits,
            feasible=True,
            converged=analysis.converged,
            iterations=iterations,
            witness=kernel,
            meta={'witness_distortion': analysis.distortion, 'memoryless': kernel.is_memoryless},
        )


def rate_inner_markov(p: SourcePmf, d: DistortionTensor, D: float, cfg: SolverConfig) -> RDPoint:
    return MarkovSolver(p, d, cfg).solve(D)
