"""
有限码长穷举
Finite-blocklength operational oracle and sandwich check
"""

from .OperationalOracle import (
    OracleResult, OracleTrend, operational_distortion, viterbi_min_distortion, oracle_trend, sequence_costs
)
from .SandwichCheck import SandwichReport, sandwich_check

__all__ = [
    'OracleResult',
    'OracleTrend',
    'operational_distortion',
    'viterbi_min_distortion',
    'oracle_trend',
    'sequence_costs',
    'SandwichReport',
    'sandwich_check'
]
