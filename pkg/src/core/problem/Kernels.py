from dataclasses import dataclass

import numpy as np

from ..errors.Errors import ValidationError
from .SourcePmf import check_stochastic_rows


@dataclass(frozen=True, eq=False)
class MemorylessKernel:
    """无记忆信道 W(y|x)，每行一个 x"""
    rows: np.ndarray

    def __post_init__(self):
        arr = check_stochastic_rows(self.rows, "memoryless kernel").copy()
        if arr.ndim != 2:
            raise ValidationError(f"memoryless kernel must be a matrix, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, 'rows', arr)

    @classmethod
    def identity(cls, size: int) -> 'MemorylessKernel':
        return cls(np.eye(size))

    @classmethod
    def constant(cls, x_size: int, output_pmf) -> 'MemorylessKernel':
        """输出与输入无关的零速率信道"""
        r = np.asarray(output_pmf, dtype=float)
        return cls(np.tile(r, (x_size, 1)))

    @classmethod
    def from_parameters(cls, alpha: float, beta: float) -> 'MemorylessKernel':
        """二元参数化 W = (α, 1−α; β, 1−β)"""
        return cls(np.array([[alpha, 1.0 - alpha], [beta, 1.0 - beta]]))

    @property
    def x_size(self) -> int:
        return int(self.rows.shape[0])

    @property
    def y_size(self) -> int:
        return int(self.rows.shape[1])

    def output_pmf(self, source) -> np.ndarray:
        """p_Y(ŷ) = Σ_x p_X(x) W(ŷ|x)"""
        return source.probs @ self.rows

    def joint(self, source) -> np.ndarray:
        return source.probs[:, None] * self.rows


@dataclass(frozen=True, eq=False)
class MarkovKernel:
    """一阶记忆信道 W(y | x, ŷ)，表下标 (x, ŷ, y)"""
    table: np.ndarray

    def __post_init__(self):
        arr = check_stochastic_rows(self.table, "markov kernel").copy()
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise ValidationError(f"markov kernel must have shape (x, y, y), got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, 'table', arr)

    @classmethod
    def from_memoryless(cls, kernel: MemorylessKernel) -> 'MarkovKernel':
        rows = kernel.rows
        return cls(np.repeat(rows[:, None, :], rows.shape[1], axis=1))

    @classmethod
    def constant(cls, x_size: int, output_pmf) -> 'MarkovKernel':
        return cls.from_memoryless(MemorylessKernel.constant(x_size, output_pmf))

    @classmethod
    def frozen(cls, x_size: int, y_size: int) -> 'MarkovKernel':
        """输出保持上一个符号: K(y|x,ŷ) = 1(y = ŷ)"""
        return cls(np.tile(np.eye(y_size)[None, :, :], (x_size, 1, 1)))

    @property
    def x_size(self) -> int:
        return int(self.table.shape[0])

    @property
    def y_size(self) -> int:
        return int(self.table.shape[2])

    @property
    def is_memoryless(self) -> bool:
        return bool(np.allclose(self.table, self.table[:, :1, :], rtol=0.0, atol=1e-15))
