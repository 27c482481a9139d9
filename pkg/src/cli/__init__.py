"""
命令行接口
Command-line interface
"""

from .CommandLine import build_parser, main
from .Commands import (
    CurveBuilder, cmd_analyze, cmd_curves, cmd_gaussian, cmd_oracle, compute_curves, parse_bounds, verify_curve
)

__all__ = [
    'build_parser', 'main', 'CurveBuilder', 'cmd_analyze', 'cmd_curves', 'cmd_gaussian', 'cmd_oracle',
    'compute_curves', 'parse_bounds', 'verify_curve'
]
