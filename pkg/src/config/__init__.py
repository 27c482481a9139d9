"""
配置管理
Configuration management
"""

from .Configs import (
    MasterConfig, ProblemConfig, DistortionSpec, SolverConfig, GridConfig, SystemConfig, OracleConfig
)

__all__ = [
    'MasterConfig',
    'ProblemConfig',
    'DistortionSpec',
    'SolverConfig',
    'GridConfig',
    'SystemConfig',
    'OracleConfig'
]
