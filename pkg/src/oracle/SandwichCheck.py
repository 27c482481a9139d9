import logging
from dataclasses import dataclass, field
from typing import List, Optional

from ..core.curves.BoundCurve import BoundCurve
from ..inner.FeasibilityRange import FeasibilityRange
from .OperationalOracle import OracleResult, OracleTrend

logger = logging.getLogger(__name__)


@dataclass
class SandwichReport:
    """有限码长点与渐近界的比较，只标记不判失败"""
    rate: float
    d_star: float
    y0: int
    outer_rate: Optional[float]
    inner_rate: Optional[float]
    below_outer: bool
    above_inner: bool
    d_max: Optional[float] = None
    trend: Optional[OracleTrend] = None
    flags: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'rate': self.rate,
            'd_star': self.d_star,
            'y0': self.y0,
            'outer_rate_at_d_star': self.outer_rate,
            'inner_rate_at_d_star': self.inner_rate,
            'below_outer': self.below_outer,
            'above_inner': self.above_inner,
            'd_max': self.d_max,
            'trend': self.trend.to_dict() if self.trend is not None else None,
            'flags': list(self.flags),
        }


def sandwich_check(result: OracleResult, inner: Optional[BoundCurve] = None,
                   outer: Optional[BoundCurve] = None,
                   feasibility: Optional[FeasibilityRange] = None,
                   trend: Optional[OracleTrend] = None,
                   tol: float = 1e-9) -> SandwichReport:
    """
    比较 (R = log₂M / n, D*) 与外界 R_1(D*)、内界 R_2(D*)。
    有限 n 下低于外界并不构成矛盾，只记录标记。
    """
    rate = result.rate
    outer_rate = outer.value_at(result.d_star) if outer is not None else None
    inner_rate = inner.value_at(result.d_star) if inner is not None else None
    flags = []

    below_outer = outer_rate is not None and rate < outer_rate - tol
    if below_outer:
        flags.append(f"operational rate {rate:.6g} is below the outer bound {outer_rate:.6g} at finite n={result.n}")
    above_inner = inner_rate is not None and rate > inner_rate + tol
    if above_inner:
        flags.append(f"operational rate {rate:.6g} exceeds the inner bound {inner_rate:.6g}")
    if outer is not None and outer_rate is None:
        flags.append("D* lies left of the outer curve's feasible grid")

    d_max = feasibility.d_max if feasibility is not None else None
    if d_max is not None and result.num_messages == 1:
        if result.d_star < d_max - tol:
            flags.append(f"zero-rate D*={result.d_star:.6g} is below d_max={d_max:.6g}")
    if trend is not None and not trend.non_increasing:
        flags.append(f"D*(n) is not non-increasing at rate {trend.rate:.6g}")

    for flag in flags:
        logger.info(f"sandwich: {flag}")
    return SandwichReport(
        rate=rate,
        d_star=result.d_star,
        y0=result.y0,
        outer_rate=outer_rate,
        inner_rate=inner_rate,
        below_outer=below_outer,
        above_inner=above_inner,
        d_max=d_max,
        trend=trend,
        flags=flags,
    )
