"""
高斯二次失真
Closed forms for the Gaussian source with quadratic memory distortion
"""

from .GaussianBounds import (
    GaussianSpec, gaussian_feasibility, gaussian_rate_inner, gaussian_curve,
    quantized_gaussian_problem, quantized_feasibility
)

__all__ = [
    'GaussianSpec',
    'gaussian_feasibility',
    'gaussian_rate_inner',
    'gaussian_curve',
    'quantized_gaussian_problem',
    'quantized_feasibility'
]
