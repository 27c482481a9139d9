"""
外界（不可行性）
Infeasibility bounds: Blahut–Arimoto, relaxations R_O1 / R_O2, shifted envelope, R_1
"""

from .SingleLetterProblem import SingleLetterProblem, product_relaxation, two_letter_relaxation
from .BlahutArimoto import blahut_arimoto, dual_intercept
from .RelaxationBounds import RelaxationBound, rate_outer_product, rate_outer_two_letter
from .OuterCurves import (
    product_curve, two_letter_curve, shift_curve, rate_outer_envelope_shift, outer_curve
)

__all__ = [
    'SingleLetterProblem',
    'product_relaxation',
    'two_letter_relaxation',
    'blahut_arimoto',
    'dual_intercept',
    'RelaxationBound',
    'rate_outer_product',
    'rate_outer_two_letter',
    'product_curve',
    'two_letter_curve',
    'shift_curve',
    'rate_outer_envelope_shift',
    'outer_curve'
]
