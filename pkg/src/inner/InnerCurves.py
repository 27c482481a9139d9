import hashlib
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config.Configs import SolverConfig
from ..core.analysis.LambdaFunctional import lambda_raw
from ..core.curves.BoundCurve import BoundCurve, BoundId, RDPoint, check_grid
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.Kernels import MarkovKernel, MemorylessKernel
from ..core.problem.SourcePmf import SourcePmf
from ..execution.TaskEngine import TaskEngine
from ..markov.StationaryAnalysis import analyze_kernel
from .ConvexEnvelope import lower_convex_envelope
from .MarkovSolver import MarkovSolver
from .MemorylessSolver import MemorylessSolver, kernel_rate

logger = logging.getLogger(__name__)


def witness_digest(witness) -> Optional[str]:
    """见证核的 sha256 摘要"""
    if witness is None:
        return None
    arr = witness.rows if isinstance(witness, MemorylessKernel) else witness.table
    return hashlib.sha256(np.ascontiguousarray(arr, dtype=np.float64).tobytes()).hexdigest()


def replay_witness(point: RDPoint, p: SourcePmf, d: DistortionTensor) -> Optional[Tuple[float, float]]:
    """重新计算见证核的 (速率, 失真)；没有见证时返回 None"""
    witness = point.witness
    if isinstance(witness, MemorylessKernel):
        return kernel_rate(witness.rows, p.probs), lambda_raw(witness.rows, p.probs, d.values)
    if isinstance(witness, MarkovKernel):
        analysis = analyze_kernel(witness, p, d)
        return analysis.rate_bits, analysis.distortion
    return None


def propagate_witnesses(points: List[RDPoint]) -> List[RDPoint]:
    """
    网格递增时较小 D 的见证在较大 D 处仍可行，取前向最小值使曲线不增。
    """
    out: List[RDPoint] = []
    for point in points:
        prev = out[-1] if out else None
        if prev is not None and prev.feasible and (not point.feasible or prev.rate < point.rate):
            carried = prev.with_distortion(point.distortion)
            carried.meta['propagated_from'] = prev.meta.get('propagated_from', prev.distortion)
            out.append(carried)
        else:
            out.append(point)
    return out


def _metadata(cfg: SolverConfig, bound_id: BoundId, points: List[RDPoint], **extra) -> dict:
    meta = {
        'bound': bound_id.value,
        'solver': cfg.to_dict(),
        'witness_digests': [witness_digest(p.witness) for p in points],
    }
    meta.update(extra)
    return meta


def memoryless_curve(p: SourcePmf, d: DistortionTensor, grid: Sequence[float], cfg: SolverConfig,
                     engine: Optional[TaskEngine] = None,
                     memoryless: Optional[MemorylessSolver] = None) -> BoundCurve:
    """R_I2 在网格上的取值"""
    D = check_grid(grid)
    solver = memoryless or MemorylessSolver(p, d, cfg)
    feas = solver.feasibility
    solver.frontier()
    engine = engine or TaskEngine()
    points = propagate_witnesses(engine.map_sync(solver.solve, [float(x) for x in D], label="R_I2"))
    logger.info(f"R_I2 computed on {len(points)} points ({sum(p.feasible for p in points)} feasible)")
    return BoundCurve(BoundId.R_I2, points, _metadata(cfg, BoundId.R_I2, points,
                                                       d_min=feas.d_min, d_max=feas.d_max))


def markov_curve(p: SourcePmf, d: DistortionTensor, grid: Sequence[float], cfg: SolverConfig,
                 engine: Optional[TaskEngine] = None,
                 memoryless: Optional[MemorylessSolver] = None,
                 bound_id: BoundId = BoundId.R_I1) -> BoundCurve:
    """R_I1 在网格上的取值"""
    D = check_grid(grid)
    memoryless = memoryless or MemorylessSolver(p, d, cfg)
    feas = memoryless.feasibility
    memoryless.frontier()
    solver = MarkovSolver(p, d, cfg, memoryless)
    engine = engine or TaskEngine()
    raw = engine.map_sync(lambda job: solver.solve(job[1], grid_index=job[0]),
                          [(i, float(x)) for i, x in enumerate(D)], label=bound_id.value)
    points = propagate_witnesses(raw)
    logger.info(f"{bound_id.value} computed on {len(points)} points ({sum(p.feasible for p in points)} feasible)")
    return BoundCurve(bound_id, points, _metadata(cfg, bound_id, points, d_min=feas.d_min, d_max=feas.d_max))


def inner_curve(p: SourcePmf, d: DistortionTensor, grid: Sequence[float], cfg: SolverConfig,
                engine: Optional[TaskEngine] = None,
                memoryless: Optional[MemorylessSolver] = None) -> BoundCurve:
    """R_2(D) = R_I1(D)"""
    return markov_curve(p, d, grid, cfg, engine, memoryless, bound_id=BoundId.R2)


def envelope_curve(curve: BoundCurve, d_max: Optional[float] = None) -> BoundCurve:
    """内界的下凸包；d_max 处 R = 0 作为额外顶点"""
    return lower_convex_envelope(curve, zero_from=d_max)
