from typing import Sequence, Union

import numpy as np

from ..errors.Errors import ValidationError
from ..problem.SourcePmf import SourcePmf, check_pmf

ArrayLike = Union[SourcePmf, Sequence[float], np.ndarray]


def _as_array(p: ArrayLike) -> np.ndarray:
    return p.probs if isinstance(p, SourcePmf) else np.asarray(p, dtype=float)


def entropy_bits(p: np.ndarray) -> float:
    """−Σ p log₂ p，0·log0 = 0（不校验）"""
    flat = np.asarray(p, dtype=float).ravel()
    nz = flat[flat > 0]
    return float(-np.sum(nz * np.log2(nz)))


def conditional_entropy_bits(joint: np.ndarray, given_axes: Sequence[int]) -> float:
    """H(其余变量 | given_axes) = H(全部) − H(given)"""
    joint = np.asarray(joint, dtype=float)
    other = tuple(i for i in range(joint.ndim) if i not in set(given_axes))
    marginal = joint.sum(axis=other) if other else joint
    return entropy_bits(joint) - entropy_bits(marginal)


def mutual_information_bits(joint: np.ndarray) -> float:
    """I(X;Y)，二维联合分布（不校验）"""
    joint = np.asarray(joint, dtype=float)
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    mask = joint > 0
    ratio = joint[mask] / np.outer(px, py)[mask]
    return max(0.0, float(np.sum(joint[mask] * np.log2(ratio))))


def entropy(p: ArrayLike) -> float:
    """熵（比特）"""
    return entropy_bits(check_pmf(_as_array(p), "pmf"))


def mutual_information(joint) -> float:
    """互信息（比特）"""
    arr = np.asarray(joint, dtype=float)
    if arr.ndim != 2:
        raise ValidationError(f"joint pmf must be a matrix, got shape {arr.shape}")
    check_pmf(arr, "joint pmf")
    return mutual_information_bits(arr)


def binary_entropy(q: float) -> float:
    """h(q)"""
    if q <= 0.0 or q >= 1.0:
        return 0.0
    return float(-q * np.log2(q) - (1.0 - q) * np.log2(1.0 - q))


def hamming_rate_distortion(D: float) -> float:
    """均匀二元信源在汉明失真下的 R(D) = 1 − h(D)"""
    if D >= 0.5:
        return 0.0
    return 1.0 - binary_entropy(max(D, 0.0))
