import numpy as np

from ..problem.DistortionTensor import DistortionTensor
from ..problem.Kernels import MemorylessKernel
from ..problem.SourcePmf import SourcePmf
from ..errors.Errors import ValidationError


def lambda_raw(rows: np.ndarray, probs: np.ndarray, values: np.ndarray) -> float:
    """Λ(W) = E_Q[d(X,Y,Ŷ)]，Q = p(x) W(y|x) p_Y(ŷ)（不校验）"""
    p_y = probs @ rows
    joint = probs[:, None] * rows
    return float(np.sum(joint * np.tensordot(values, p_y, axes=([2], [0]))))


def lambda_gradient(rows: np.ndarray, probs: np.ndarray, values: np.ndarray) -> np.ndarray:
    """∂Λ/∂W(y|x) = p(x)·[Σ_ŷ p_Y(ŷ) d(x,y,ŷ) + Σ_{x',y'} p(x')W(y'|x') d(x',y',y)]"""
    return probs[:, None] * effective_distortion(rows, probs, values)


def effective_distortion(rows: np.ndarray, probs: np.ndarray, values: np.ndarray) -> np.ndarray:
    """当前输出分布下的等效单字母失真：当前位置项加上作为记忆符号的代价"""
    p_y = probs @ rows
    joint = probs[:, None] * rows
    forward = np.tensordot(values, p_y, axes=([2], [0]))
    backward = np.tensordot(joint, values, axes=([0, 1], [0, 1]))
    return forward + backward[None, :]


def check_dimensions(kernel: MemorylessKernel, source: SourcePmf, tensor: DistortionTensor) -> None:
    if kernel.x_size != source.size or kernel.x_size != tensor.x_size:
        raise ValidationError(
            f"kernel has {kernel.x_size} input rows, source {source.size} symbols, tensor {tensor.x_size}"
        )
    if kernel.y_size != tensor.y_size:
        raise ValidationError(f"kernel has {kernel.y_size} outputs but the tensor expects {tensor.y_size}")


def lambda_value(kernel: MemorylessKernel, source: SourcePmf, tensor: DistortionTensor) -> float:
    """乘积耦合下的期望失真 Λ(W)"""
    check_dimensions(kernel, source, tensor)
    return lambda_raw(kernel.rows, source.probs, tensor.values)


def memory_span(tensor: DistortionTensor) -> float:
    """𝚍 = max_{x,y,z,t} [d(x,y,z) − d(x,y,t)]"""
    values = tensor.values
    return float(np.max(values.max(axis=2) - values.min(axis=2)))
