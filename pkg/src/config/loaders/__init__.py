"""
配置加载器
Configuration loaders
"""

from .ConfigLoader import ConfigLoader

__all__ = [
    'ConfigLoader'
]
