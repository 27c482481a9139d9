from typing import Optional


class SrdError(Exception):
    """基础异常"""
    exit_code = 1


class ValidationError(SrdError, ValueError):
    """输入校验失败"""
    exit_code = 2


class ConfigError(ValidationError):
    """配置文件错误，带字段路径和行号"""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = ""
        if field:
            location += f"{field}: "
        if line is not None:
            location = f"line {line}: " + location
        super().__init__(f"{location}{message}")


class UnsupportedCombinationError(ValidationError):
    """请求的界与问题类型不兼容"""


class ConvergenceError(SrdError):
    """求解器未收敛"""
    exit_code = 3


class SizeGuardError(SrdError):
    """问题规模超过枚举上限"""
    exit_code = 4
