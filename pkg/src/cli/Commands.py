import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from ..config.Configs import MasterConfig, OracleConfig
from ..config.loaders.ConfigLoader import ConfigLoader
from ..core.analysis.ConvexityReport import HESSIAN_TOL, convexity_report
from ..core.analysis.LambdaFunctional import memory_span
from ..core.curves.BoundCurve import BoundCurve, BoundId
from ..core.errors.Errors import ConvergenceError, SizeGuardError, UnsupportedCombinationError
from ..core.problem.DistortionTensor import DistortionTensor
from ..core.problem.SourcePmf import PMF_TOL, SourcePmf
from ..execution.TaskEngine import TaskEngine
from ..gaussian.GaussianBounds import GaussianSpec, gaussian_curve, gaussian_feasibility
from ..inner.InnerCurves import envelope_curve, markov_curve, memoryless_curve, replay_witness
from ..inner.MemorylessSolver import FEASIBILITY_TOL, MemorylessSolver
from ..oracle.OperationalOracle import operational_distortion, oracle_trend, viterbi_min_distortion
from ..oracle.SandwichCheck import sandwich_check
from ..outer.OuterCurves import outer_curve, product_curve, shift_curve, two_letter_curve
from .OutputWriter import write_curves

logger = logging.getLogger(__name__)

DEFAULT_BOUNDS = (BoundId.R1, BoundId.R2)
GAUSSIAN_BOUNDS = (BoundId.R_I2,)
REPLAY_TOL = 1e-9


def parse_bounds(text: str) -> List[BoundId]:
    """逗号分隔的界名，保持顺序并去重"""
    out: List[BoundId] = []
    for name in text.split(','):
        if not name.strip():
            continue
        bound = BoundId.parse(name)
        if bound not in out:
            out.append(bound)
    return out or list(DEFAULT_BOUNDS)


def build_engine(config: MasterConfig) -> TaskEngine:
    return TaskEngine(worker_count=config.system.worker_count())


class CurveBuilder:
    """共享同一个无记忆求解器（前沿只扫描一次），按需构造并缓存各条曲线"""

    def __init__(self, p: SourcePmf, d: DistortionTensor, config: MasterConfig,
                 engine: Optional[TaskEngine] = None):
        self.p = p
        self.d = d
        self.cfg = config.solver
        self.grid = config.grid.values()
        self.engine = engine or TaskEngine()
        self.memoryless = MemorylessSolver(p, d, self.cfg)
        self._cache: Dict[BoundId, BoundCurve] = {}

    def build(self, bound_id: BoundId) -> BoundCurve:
        if bound_id not in self._cache:
            logger.info(f"computing {bound_id.value} on {len(self.grid)} grid points")
            self._cache[bound_id] = self._compute(bound_id)
        return self._cache[bound_id]

    def _compute(self, bound_id: BoundId) -> BoundCurve:
        p, d, grid, cfg, engine = self.p, self.d, self.grid, self.cfg, self.engine
        if bound_id is BoundId.R_I2:
            return memoryless_curve(p, d, grid, cfg, engine, self.memoryless)
        if bound_id is BoundId.R_I1:
            return markov_curve(p, d, grid, cfg, engine, self.memoryless)
        if bound_id is BoundId.R2:
            base = self.build(BoundId.R_I1)
            return BoundCurve(BoundId.R2, list(base.points), {**base.metadata, 'bound': BoundId.R2.value})
        if bound_id is BoundId.ENV_I1:
            return envelope_curve(self.build(BoundId.R_I1), self.memoryless.feasibility.d_max)
        if bound_id is BoundId.ENV_I2:
            return envelope_curve(self.build(BoundId.R_I2), self.memoryless.feasibility.d_max)
        if bound_id is BoundId.R_O1:
            return product_curve(p, d, grid, cfg, engine)
        if bound_id is BoundId.R_O2:
            return two_letter_curve(p, d, grid, cfg, engine)
        if bound_id is BoundId.THM3:
            return shift_curve(p, d, grid, cfg, engine, self.memoryless)
        return outer_curve(p, d, grid, cfg, engine, self.memoryless)


@dataclass
class Verification:
    """见证核重放结果"""
    checked: int = 0
    skipped: int = 0
    failures: List[Dict[str, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'checked': self.checked, 'skipped': self.skipped, 'failures': self.failures}


def verify_curve(curve: BoundCurve, p: SourcePmf, d: DistortionTensor, tol: float = REPLAY_TOL) -> Verification:
    """重算每个可行点见证核的速率和失真，与 CSV 中的 (D, R) 比较"""
    report = Verification()
    for point in curve.finite_points():
        replay = replay_witness(point, p, d)
        if replay is None:
            report.skipped += 1
            continue
        rate, distortion = replay
        report.checked += 1
        if abs(rate - point.rate) > tol or distortion > point.distortion + tol:
            report.failures.append({'D': point.distortion, 'R': point.rate,
                                    'replayed_rate': rate, 'replayed_distortion': distortion})
    if report.failures:
        logger.warning(f"{curve.bound_id.value}: {len(report.failures)} witness replays disagree")
    return report


def cmd_analyze(config: MasterConfig) -> Dict[str, Any]:
    """𝚍、(d_min, d_max) 及见证、凸性报告"""
    problem = config.problem
    if problem.distortion.is_gaussian:
        spec = ConfigLoader.gaussian_spec(problem)
        d_min, d_zero = gaussian_feasibility(spec)
        return {
            'preset': 'gaussian',
            'sigma2': spec.sigma2,
            'gamma': spec.gamma,
            'd_min': d_min,
            'd_max': d_zero,
        }

    p, d = ConfigLoader.build_problem(problem)
    feasibility = MemorylessSolver(p, d, config.solver).feasibility
    document: Dict[str, Any] = {
        'x_size': d.x_size,
        'y_size': d.y_size,
        'source': p.probs.tolist(),
        'y0': problem.y0,
        'memory_span': memory_span(d),
        **feasibility.to_dict(),
    }
    try:
        document['convexity'] = convexity_report(d, p).to_dict()
    except SizeGuardError as e:
        logger.warning(f"convexity report skipped: {e}")
        document['convexity'] = {'skipped': str(e)}
    return document


def _curve_metadata(config: MasterConfig, curves: Sequence[BoundCurve],
                    verification: Optional[Dict[str, Verification]]) -> Dict[str, Any]:
    metadata = {
        'problem': ConfigLoader.to_normalized_dict(config)['problem'],
        'seed': config.solver.seed,
        'solver': config.solver.to_dict(),
        'grid': {'start': config.grid.start, 'stop': config.grid.stop, 'count': config.grid.count},
        'tolerances': {
            'pmf': PMF_TOL,
            'hessian': HESSIAN_TOL,
            'feasibility': FEASIBILITY_TOL,
            'solver': config.solver.tol,
            'replay': REPLAY_TOL,
        },
        'bounds': {c.bound_id.value: c.metadata for c in curves},
        'non_converged': {c.bound_id.value: [pt.distortion for pt in c.non_converged()] for c in curves},
    }
    if verification is not None:
        metadata['verification'] = {k: v.to_dict() for k, v in verification.items()}
    return metadata


def compute_curves(config: MasterConfig, bounds: Sequence[BoundId],
                   engine: Optional[TaskEngine] = None) -> List[BoundCurve]:
    problem = config.problem
    if problem.distortion.is_gaussian:
        unsupported = [b.value for b in bounds if b not in GAUSSIAN_BOUNDS]
        if unsupported:
            raise UnsupportedCombinationError(
                f"bounds {', '.join(unsupported)} need a finite-alphabet problem; "
                f"the gaussian preset supports {', '.join(b.value for b in GAUSSIAN_BOUNDS)}"
            )
        return [gaussian_curve(ConfigLoader.gaussian_spec(problem), config.grid.values())]

    p, d = ConfigLoader.build_problem(problem)
    builder = CurveBuilder(p, d, config, engine)
    return [builder.build(b) for b in bounds]


def cmd_curves(config: MasterConfig, bounds: Sequence[BoundId], out_dir: str,
               verify: bool = False, strict: bool = False,
               engine: Optional[TaskEngine] = None) -> Dict[str, Any]:
    """每个界一个 CSV、合并 CSV 与元数据；strict 时未收敛点或重放失败抛 ConvergenceError"""
    curves = compute_curves(config, bounds, engine)

    verification = None
    if verify and not config.problem.distortion.is_gaussian:
        p, d = ConfigLoader.build_problem(config.problem)
        verification = {c.bound_id.value: verify_curve(c, p, d) for c in curves if c.bound_id.is_inner}

    paths = write_curves(curves, out_dir, _curve_metadata(config, curves, verification))
    non_converged = sum(len(c.non_converged()) for c in curves)
    failed = sum(len(v.failures) for v in verification.values()) if verification else 0
    summary = {
        'files': paths,
        'bounds': [c.bound_id.value for c in curves],
        'non_converged': non_converged,
        'replay_failures': failed,
    }
    if non_converged:
        logger.warning(f"{non_converged} grid points did not converge")
    if strict and (non_converged or failed):
        raise ConvergenceError(f"{non_converged} non-converged points, {failed} witness replay failures")
    return summary


def cmd_oracle(config: MasterConfig, n: int, num_messages: int,
               with_bounds: bool = True, with_trend: bool = True,
               engine: Optional[TaskEngine] = None) -> Dict[str, Any]:
    """D*、最优码本与夹逼检查"""
    if config.problem.distortion.is_gaussian:
        raise UnsupportedCombinationError("the operational oracle needs a finite-alphabet problem")
    p, d = ConfigLoader.build_problem(config.problem)
    engine = engine or TaskEngine()
    oracle_cfg = OracleConfig(n=n, num_messages=num_messages, y0=config.problem.y0)
    result = operational_distortion(p, d, oracle_cfg, engine)

    memoryless = MemorylessSolver(p, d, config.solver)
    inner = outer = None
    if with_bounds:
        grid = config.grid.values()
        outer = outer_curve(p, d, grid, config.solver, engine, memoryless)
        inner = markov_curve(p, d, grid, config.solver, engine, memoryless, bound_id=BoundId.R2)
    trend = None
    if with_trend and n > 1:
        trend = oracle_trend(p, d, list(range(1, n + 1)), result.rate, config.problem.y0, engine)
    report = sandwich_check(result, inner=inner, outer=outer,
                            feasibility=memoryless.feasibility, trend=trend)
    return {
        **result.to_dict(),
        'full_codebook_d_star': viterbi_min_distortion(p, d, n, config.problem.y0),
        'sandwich': report.to_dict(),
    }


def cmd_gaussian(spec: GaussianSpec, grid: Sequence[float]) -> BoundCurve:
    """高斯闭式 R_I2 曲线"""
    return gaussian_curve(spec, grid)
