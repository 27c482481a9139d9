import logging
from typing import Optional, Sequence

import numpy as np

from ..config.Configs import SolverConfig
from ..core.analysis.LambdaFunctional import memory_span
from ..core.curves.BoundCurve import BoundCurve, BoundId, RDPoint, check_grid
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.SourcePmf import SourcePmf
from ..execution.TaskEngine import TaskEngine
from ..inner.ConvexEnvelope import lower_convex_envelope
from ..inner.InnerCurves import memoryless_curve
from ..inner.MemorylessSolver import MemorylessSolver
from .RelaxationBounds import RelaxationBound
from .SingleLetterProblem import product_relaxation, two_letter_relaxation

ENVELOPE_NOTE = (
    "shifted term evaluates the lower convex envelope of R_I2 at D + memory span "
    "(the proven form), not the raw R_I2 samples"
)
DEFAULT_SHIFT_SAMPLES = 33

logger = logging.getLogger(__name__)


def _relaxation_curve(bound: RelaxationBound, bound_id: BoundId, grid: Sequence[float],
                      cfg: SolverConfig, engine: Optional[TaskEngine]) -> BoundCurve:
    D = check_grid(grid)
    bound.sweep()
    engine = engine or TaskEngine()
    points = engine.map_sync(bound.lower_bound, [float(x) for x in D], label=bound_id.value)
    logger.info(f"{bound_id.value} computed on {len(points)} points")
    return BoundCurve(bound_id, points, {'bound': bound_id.value, 'solver': cfg.to_dict()})


def product_curve(p: SourcePmf, d: DistortionTensor, grid: Sequence[float], cfg: SolverConfig,
                  engine: Optional[TaskEngine] = None) -> BoundCurve:
    """R_O1 在网格上的取值"""
    return _relaxation_curve(RelaxationBound(product_relaxation(p, d), cfg, "R_O1"), BoundId.R_O1, grid, cfg, engine)


def two_letter_curve(p: SourcePmf, d: DistortionTensor, grid: Sequence[float], cfg: SolverConfig,
                     engine: Optional[TaskEngine] = None) -> BoundCurve:
    """R_O2 在网格上的取值"""
    return _relaxation_curve(RelaxationBound(two_letter_relaxation(p, d), cfg, "R_O2"), BoundId.R_O2, grid, cfg, engine)


def _shift_curve(p: SourcePmf, d: DistortionTensor, grid: np.ndarray, cfg: SolverConfig,
                 engine: Optional[TaskEngine], memoryless: Optional[MemorylessSolver]) -> BoundCurve:
    """R_I2 下凸包在 D + 𝚍 处的取值"""
    span = memory_span(d)
    memoryless = memoryless or MemorylessSolver(p, d, cfg)
    feas = memoryless.feasibility

    shifted = grid + span
    inside = shifted[(shifted > feas.d_min) & (shifted < feas.d_max)]
    samples = np.unique(np.concatenate((
        [feas.d_min, feas.d_max],
        inside,
        np.linspace(feas.d_min, feas.d_max, DEFAULT_SHIFT_SAMPLES) if feas.d_max > feas.d_min else [],
    )))
    if samples.size >= 2:
        envelope = lower_convex_envelope(
            memoryless_curve(p, d, samples, cfg, engine, memoryless), zero_from=feas.d_max
        )
    else:
        envelope = None

    points = []
    for D, target in zip(grid, shifted):
        if target >= feas.d_max:
            points.append(RDPoint(float(D), 0.0, meta={'shifted_distortion': float(target)}))
        elif target < feas.d_min - 1e-9:
            points.append(RDPoint.infeasible(D, domain_marker=True, shifted_distortion=float(target)))
        else:
            value = envelope.value_at(float(target)) if envelope is not None else None
            if value is None:
                points.append(RDPoint.infeasible(D, domain_marker=True, shifted_distortion=float(target)))
            else:
                points.append(RDPoint(float(D), value, meta={'shifted_distortion': float(target)}))
    return BoundCurve(BoundId.THM3, points, {
        'bound': BoundId.THM3.value,
        'memory_span': span,
        'd_min': feas.d_min,
        'd_max': feas.d_max,
        'note': ENVELOPE_NOTE,
        'solver': cfg.to_dict(),
    })


def shift_curve(p: SourcePmf, d: DistortionTensor, grid: Sequence[float], cfg: SolverConfig,
                engine: Optional[TaskEngine] = None,
                memoryless: Optional[MemorylessSolver] = None) -> BoundCurve:
    """平移包络界在网格上的取值；低于 d_min − 𝚍 的点带 domain_marker"""
    return _shift_curve(p, d, check_grid(grid), cfg, engine, memoryless)


def rate_outer_envelope_shift(p: SourcePmf, d: DistortionTensor, D: float, cfg: SolverConfig) -> RDPoint:
    """单点平移包络界"""
    return _shift_curve(p, d, np.array([float(D)]), cfg, None, None).points[0]


def outer_curve(p: SourcePmf, d: DistortionTensor, grid: Sequence[float], cfg: SolverConfig,
                engine: Optional[TaskEngine] = None,
                memoryless: Optional[MemorylessSolver] = None) -> BoundCurve:
    """R_1(D) = max{R_O1(D), 平移包络界, 0}，记录每点胜出的项"""
    D = check_grid(grid)
    product = product_curve(p, d, D, cfg, engine)
    shifted = shift_curve(p, d, D, cfg, engine, memoryless)

    points = []
    for po, ps in zip(product.points, shifted.points):
        if not po.feasible:
            points.append(RDPoint.infeasible(po.distortion, winning_term='R_O1'))
            continue
        terms = [('R_O1', po.rate), ('ZERO', 0.0)]
        if ps.feasible:
            terms.insert(1, ('THM3', ps.rate))
        name, value = max(terms, key=lambda t: t[1])
        points.append(RDPoint(
            distortion=po.distortion,
            rate=value,
            converged=po.converged,
            meta={'winning_term': name, 'R_O1': po.rate, 'THM3': ps.rate if ps.feasible else None},
        ))
    metadata = {
        'bound': BoundId.R1.value,
        'memory_span': shifted.metadata['memory_span'],
        'note': ENVELOPE_NOTE,
        'solver': cfg.to_dict(),
    }
    return BoundCurve(BoundId.R1, points, metadata)
