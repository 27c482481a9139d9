"""
马尔可夫平稳分析
Stationary analysis of the coupled source/reproduction chain
"""

from .StationaryAnalysis import (
    StationaryAnalysis, StationaryDistribution, induced_output_chain, stationary_distribution,
    stationary_rate, stationary_distortion, stationary_joint, analyze_kernel
)
from .ChainSimulator import SimulationResult, simulate_chain, recurrent_classes

__all__ = [
    'StationaryAnalysis',
    'StationaryDistribution',
    'induced_output_chain',
    'stationary_distribution',
    'stationary_rate',
    'stationary_distortion',
    'stationary_joint',
    'analyze_kernel',
    'SimulationResult',
    'simulate_chain',
    'recurrent_classes'
]
