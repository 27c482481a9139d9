"""
问题定义
Finite-alphabet problem definition: source, distortion tensor, kernels, presets
"""

from .SourcePmf import SourcePmf, check_pmf, check_stochastic_rows, PMF_TOL
from .DistortionTensor import DistortionTensor
from .Kernels import MemorylessKernel, MarkovKernel
from .Presets import fig2_tensor, gamma_hamming_tensor, hamming_tensor, constant_tensor

__all__ = [
    'SourcePmf',
    'check_pmf',
    'check_stochastic_rows',
    'PMF_TOL',
    'DistortionTensor',
    'MemorylessKernel',
    'MarkovKernel',
    'fig2_tensor',
    'gamma_hamming_tensor',
    'hamming_tensor',
    'constant_tensor'
]
