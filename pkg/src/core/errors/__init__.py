"""
异常定义
Error types shared by all modules
"""

from .Errors import (
    SrdError, ValidationError, ConfigError, UnsupportedCombinationError,
    ConvergenceError, SizeGuardError
)

__all__ = [
    'SrdError',
    'ValidationError',
    'ConfigError',
    'UnsupportedCombinationError',
    'ConvergenceError',
    'SizeGuardError'
]
