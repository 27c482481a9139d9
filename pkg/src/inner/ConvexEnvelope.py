from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.curves.BoundCurve import BoundCurve, BoundId, RDPoint

ENVELOPE_IDS = {BoundId.R_I1: BoundId.ENV_I1, BoundId.R_I2: BoundId.ENV_I2, BoundId.R2: BoundId.ENV_I1}


def lower_hull(points: Sequence[Tuple[float, float]]) -> List[Tuple[float, float]]:
    """单调链下凸包，按 x 递增返回顶点"""
    hull: List[Tuple[float, float]] = []
    for p in sorted(points):
        while len(hull) > 1:
            v0, v1 = hull[-2], hull[-1]
            cross = (v1[0] - v0[0]) * (p[1] - v0[1]) - (p[0] - v0[0]) * (v1[1] - v0[1])
            if cross <= 0.0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def lower_convex_envelope(curve: BoundCurve, zero_from: Optional[float] = None) -> BoundCurve:
    """
    可行样本的下凸包在同一网格上的取值，再取前缀最小保证不增。
    不可行点原样保留；可行点少于两个时返回原曲线。
    zero_from 给出已知 R = 0 的失真（如 d_max），作为额外的凸包顶点。
    """
    if len(curve.finite_points()) < 2:
        return curve
    lowest = {}
    for p in curve.points:
        if p.feasible:
            lowest[p.distortion] = min(p.rate, lowest.get(p.distortion, np.inf))
    if zero_from is not None and lowest:
        lowest[float(zero_from)] = 0.0
    finite = sorted(lowest.items())

    hull = lower_hull(finite)
    hx = np.array([h[0] for h in hull])
    hy = np.array([h[1] for h in hull])
    vertices = set(hull)

    points: List[RDPoint] = []
    running = np.inf
    for p in curve.points:
        if not p.feasible:
            points.append(p)
            continue
        value = min(float(np.interp(p.distortion, hx, hy)), p.rate)
        running = min(running, value)
        meta = dict(p.meta)
        on_hull = (p.distortion, p.rate) in vertices and abs(running - p.rate) <= 1e-15
        if not on_hull:
            j = int(np.clip(np.searchsorted(hx, p.distortion), 1, len(hx) - 1))
            meta['time_sharing'] = [float(hx[j - 1]), float(hx[j])]
        points.append(replace(p, rate=running, witness=p.witness if on_hull else None, meta=meta))

    metadata = dict(curve.metadata)
    metadata['envelope_of'] = curve.bound_id.value
    metadata['hull_vertices'] = [[float(x), float(y)] for x, y in hull]
    return BoundCurve(ENVELOPE_IDS.get(curve.bound_id, curve.bound_id), points, metadata)
