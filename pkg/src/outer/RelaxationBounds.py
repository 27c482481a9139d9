import logging
import threading
from typing import List, Optional

import numpy as np

from ..config.Configs import SolverConfig
from ..core.curves.BoundCurve import RDPoint
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.SourcePmf import SourcePmf
from .BlahutArimoto import blahut_arimoto
from .SingleLetterProblem import SingleLetterProblem, product_relaxation, two_letter_relaxation

FEASIBILITY_TOL = 1e-9

logger = logging.getLogger(__name__)


class RelaxationBound:
    """
    单字母问题的认证下界：扫描斜率得到一族支撑线 R ≥ s·D + b，
    在目标 D 处二分斜率加密，取 max(0, 最大支撑线值)。
    """

    def __init__(self, problem: SingleLetterProblem, cfg: SolverConfig, name: str = "relaxation"):
        self.problem = problem
        self.cfg = cfg
        self.name = name
        self._sweep: Optional[List[RDPoint]] = None
        self._lock = threading.Lock()
        self.logger = logging.getLogger(__name__)

    def slopes(self) -> np.ndarray:
        """由陡到缓的负斜率序列，末尾为 0"""
        lo, hi = self.cfg.slope_range
        magnitudes = np.logspace(np.log2(hi), np.log2(lo), self.cfg.slope_count, base=2.0)
        return np.concatenate((-magnitudes, [0.0]))

    def sweep(self) -> List[RDPoint]:
        """斜率扫描（缓存），相邻斜率温启动"""
        with self._lock:
            if self._sweep is None:
                points = []
                q = None
                for s in self.slopes():
                    point = blahut_arimoto(self.problem, float(s), self.cfg, init_q=q)
                    q = point.meta['output_pmf']
                    points.append(point)
                stalled = sum(not p.converged for p in points)
                if stalled:
                    self.logger.warning(f"{self.name}: {stalled} of {len(points)} slopes did not converge")
                self._sweep = points
            return self._sweep

    def _refine(self, D: float) -> List[RDPoint]:
        points = self.sweep()
        extra = []
        # 扫描按斜率由陡到缓，D(s) 递增
        for steep, flat in zip(points, points[1:]):
            if steep.distortion <= D <= flat.distortion and flat.slope < 0:
                a, b = np.log2(-steep.slope / self._slope_factor), np.log2(-flat.slope / self._slope_factor)
                q = steep.meta['output_pmf']
                for _ in range(self.cfg.refine_steps):
                    mid = 0.5 * (a + b)
                    point = blahut_arimoto(self.problem, -float(2.0 ** mid), self.cfg, init_q=q)
                    extra.append(point)
                    if point.distortion <= D:
                        a, q = mid, point.meta['output_pmf']
                    else:
                        b = mid
                break
        return extra

    @property
    def _slope_factor(self) -> float:
        return self.problem.rate_scale / self.problem.distortion_scale

    def lower_bound(self, D: float) -> RDPoint:
        """D 处的认证下界；D 低于可达最小失真时返回不可行点"""
        if D < self.problem.min_distortion - FEASIBILITY_TOL:
            return RDPoint.infeasible(D, min_distortion=self.problem.min_distortion)
        lines = self.sweep() + self._refine(D)
        values = [line.slope * D + line.intercept for line in lines]
        best = int(np.argmax(values))
        rate = max(0.0, float(values[best]))
        line = lines[best]
        return RDPoint(
            distortion=float(D),
            rate=rate,
            converged=all(p.converged for p in lines),
            iterations=line.iterations,
            slope=line.slope,
            intercept=line.intercept,
            meta={'tangent_distortion': line.distortion},
        )


def rate_outer_product(p: SourcePmf, d: DistortionTensor, D: float, cfg: SolverConfig) -> RDPoint:
    """R_O1：再现字母表 𝒴×𝒴 的单字母松弛"""
    return RelaxationBound(product_relaxation(p, d), cfg, "R_O1").lower_bound(D)


def rate_outer_two_letter(p: SourcePmf, d: DistortionTensor, D: float, cfg: SolverConfig) -> RDPoint:
    """R_O2：两字母松弛"""
    return RelaxationBound(two_letter_relaxation(p, d), cfg, "R_O2").lower_bound(D)
