"""
核心模块
Core modules: problem definition, information utilities, Λ analysis, bound curves
"""

from .errors import SrdError, ValidationError, ConfigError, ConvergenceError, SizeGuardError
from .problem import SourcePmf, DistortionTensor, MemorylessKernel, MarkovKernel
from .info import entropy, mutual_information
from .analysis import lambda_value, memory_span, convexity_report, ConvexityReport
from .curves import BoundId, RDPoint, BoundCurve

__all__ = [
    'SrdError',
    'ValidationError',
    'ConfigError',
    'ConvergenceError',
    'SizeGuardError',
    'SourcePmf',
    'DistortionTensor',
    'MemorylessKernel',
    'MarkovKernel',
    'entropy',
    'mutual_information',
    'lambda_value',
    'memory_span',
    'convexity_report',
    'ConvexityReport',
    'BoundId',
    'RDPoint',
    'BoundCurve'
]
