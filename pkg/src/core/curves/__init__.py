"""
界曲线
Bound curves and rate-distortion points
"""

from .BoundCurve import BoundId, RDPoint, BoundCurve, check_grid

__all__ = [
    'BoundId',
    'RDPoint',
    'BoundCurve',
    'check_grid'
]
