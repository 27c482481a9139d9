"""
记忆失真率失真界计算
Rate-distortion bounds for distortion measures with one-step memory
"""

__version__ = "1.0.0"
