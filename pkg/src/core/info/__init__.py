"""
信息论工具
Entropy and mutual information over finite alphabets (bits)
"""

from .InfoTheory import (
    entropy, mutual_information, entropy_bits, conditional_entropy_bits,
    mutual_information_bits, binary_entropy, hamming_rate_distortion
)

__all__ = [
    'entropy',
    'mutual_information',
    'entropy_bits',
    'conditional_entropy_bits',
    'mutual_information_bits',
    'binary_entropy',
    'hamming_rate_distortion'
]
