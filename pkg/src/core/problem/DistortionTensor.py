from dataclasses import dataclass

import numpy as np

from ..errors.Errors import ValidationError


@dataclass(frozen=True, eq=False)
class DistortionTensor:
    """带记忆失真函数 d(x, y, ŷ)，下标顺序 (x, y, ŷ)"""
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 3:
            raise ValidationError(f"distortion tensor must be 3-dimensional, got shape {arr.shape}")
        if arr.shape[1] != arr.shape[2]:
            raise ValidationError(
                f"second and third axes must share the reproduction alphabet, got {arr.shape[1]} and {arr.shape[2]}"
            )
        if min(arr.shape) < 1:
            raise ValidationError("distortion tensor must not be empty")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("distortion tensor must be bounded (finite entries)")
        arr.setflags(write=False)
        object.__setattr__(self, 'values', arr)

    @classmethod
    def memoryless(cls, matrix) -> 'DistortionTensor':
        """由 d(x, y) 构造与 ŷ 无关的张量"""
        m = np.asarray(matrix, dtype=float)
        return cls(np.repeat(m[:, :, None], m.shape[1], axis=2))

    @property
    def x_size(self) -> int:
        return int(self.values.shape[0])

    @property
    def y_size(self) -> int:
        return int(self.values.shape[1])

    def check_source(self, source) -> None:
        if source.size != self.x_size:
            raise ValidationError(
                f"source alphabet has {source.size} symbols but the tensor expects {self.x_size}"
            )

    def __eq__(self, other) -> bool:
        return isinstance(other, DistortionTensor) and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.values.shape, self.values.tobytes()))
