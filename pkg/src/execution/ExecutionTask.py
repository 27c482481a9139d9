import time
from dataclasses import dataclass, field
from typing import Any


@dataclass
class ExecutionTask:
    """执行任务：一个网格点、一个起点或一段码本"""
    index: int  # 结果合并位置
    payload: Any = None
    label: str = ""
    retry_count: int = 0
    created_time: float = field(default_factory=time.time)
