import numpy as np

from .DistortionTensor import DistortionTensor


def fig2_tensor(c: float) -> DistortionTensor:
    """启动代价示例：d(x, y, ŷ=0) = (0, 1+c; 1, c)，d(x, y, ŷ=1) = (0, 1; 1, 0)"""
    values = np.empty((2, 2, 2))
    values[:, :, 0] = [[0.0, 1.0 + c], [1.0, c]]
    values[:, :, 1] = [[0.0, 1.0], [1.0, 0.0]]
    return DistortionTensor(values)


def gamma_hamming_tensor(gamma: float, size: int = 2) -> DistortionTensor:
    """d = 1(x≠y) + γ·1(x≠ŷ)"""
    x = np.arange(size)[:, None, None]
    y = np.arange(size)[None, :, None]
    z = np.arange(size)[None, None, :]
    return DistortionTensor((x != y).astype(float) + gamma * (x != z).astype(float))


def hamming_tensor(size: int = 2) -> DistortionTensor:
    return DistortionTensor.memoryless(1.0 - np.eye(size))


def constant_tensor(value: float, x_size: int = 2, y_size: int = 2) -> DistortionTensor:
    return DistortionTensor(np.full((x_size, y_size, y_size), float(value)))
