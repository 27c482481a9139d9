"""
Λ 泛函分析
Λ functional, memory span and convexity diagnostics
"""

from .LambdaFunctional import (
    lambda_value, lambda_raw, lambda_gradient, effective_distortion, memory_span, check_dimensions
)
from .ConvexityReport import ConvexityReport, convexity_report, lambda_hessian, free_coordinate_map

__all__ = [
    'lambda_value',
    'lambda_raw',
    'lambda_gradient',
    'effective_distortion',
    'memory_span',
    'check_dimensions',
    'ConvexityReport',
    'convexity_report',
    'lambda_hessian',
    'free_coordinate_map'
]
