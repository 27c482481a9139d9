"""
执行模块
Worker pool for grid points, restarts and codebook chunks
"""

from .TaskEngine import TaskEngine
from .ExecutionTask import ExecutionTask

__all__ = [
    'TaskEngine',
    'ExecutionTask'
]
