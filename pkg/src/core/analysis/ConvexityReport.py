import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors.Errors import SizeGuardError
from ..problem.DistortionTensor import DistortionTensor
from ..problem.SourcePmf import SourcePmf

HESSIAN_TOL = 1e-9
MAX_FREE_COORDINATES = 2000

SCOPE_BINARY_UNIFORM = "binary-uniform closed form"
SCOPE_GENERAL = "general hessian test (no closed-form criterion)"

logger = logging.getLogger(__name__)


@dataclass
class ConvexityReport:
    """Λ 凸性诊断"""
    e1: Optional[float]
    e2: Optional[float]
    hessian_min_eigenvalue: float
    is_convex: bool
    is_affine: bool
    scope: str
    hessian: np.ndarray = field(repr=False, default=None)
    descent_direction: Optional[np.ndarray] = field(repr=False, default=None)

    @property
    def closed_form_convex(self) -> Optional[bool]:
        """二元均匀情形的判据 e1 = e2 ≥ 0"""
        if self.e1 is None:
            return None
        return abs(self.e1 - self.e2) <= HESSIAN_TOL and min(self.e1, self.e2) >= -HESSIAN_TOL

    def to_dict(self) -> dict:
        return {
            'e1': self.e1,
            'e2': self.e2,
            'hessian_min_eigenvalue': self.hessian_min_eigenvalue,
            'convex': self.is_convex,
            'affine': self.is_affine,
            'scope': self.scope,
        }


def free_coordinate_map(x_size: int, y_size: int) -> np.ndarray:
    """自由坐标到完整信道坐标的线性映射（每行去掉最后一列）"""
    free = y_size - 1
    A = np.zeros((x_size * y_size, x_size * free))
    for x in range(x_size):
        for k in range(free):
            A[x * y_size + k, x * free + k] = 1.0
            A[x * y_size + y_size - 1, x * free + k] = -1.0
    return A


def lambda_hessian(source: SourcePmf, tensor: DistortionTensor) -> np.ndarray:
    """Λ 在自由坐标上的（常数）Hessian"""
    X, Y = tensor.x_size, tensor.y_size
    if X * (Y - 1) > MAX_FREE_COORDINATES:
        raise SizeGuardError(
            f"hessian over {X * (Y - 1)} free coordinates exceeds the guard of {MAX_FREE_COORDINATES}"
        )
    p = source.probs
    M = np.einsum('x,w,xyz->xywz', p, p, tensor.values).reshape(X * Y, X * Y)
    A = free_coordinate_map(X, Y)
    return A.T @ (M + M.T) @ A


def convexity_report(tensor: DistortionTensor, source: SourcePmf) -> ConvexityReport:
    """Λ 的凸性报告：二元均匀情形给出 e1/e2，其余情形使用一般 Hessian 判据"""
    tensor.check_source(source)
    H = lambda_hessian(source, tensor)
    scale = max(1.0, float(np.max(np.abs(tensor.values))))
    tol = HESSIAN_TOL * scale

    if H.size == 0:
        min_eig, direction, affine = 0.0, None, True
    else:
        eigvals, eigvecs = np.linalg.eigh(H)
        min_eig = float(eigvals[0])
        direction = eigvecs[:, 0]
        affine = bool(np.max(np.abs(eigvals)) <= tol)

    e1 = e2 = None
    scope = SCOPE_GENERAL
    if tensor.x_size == 2 and tensor.y_size == 2 and source.is_uniform:
        d = tensor.values
        e1 = float(d[0, 0, 0] + d[0, 1, 1] - d[0, 1, 0] - d[0, 0, 1])
        e2 = float(d[1, 0, 0] + d[1, 1, 1] - d[1, 1, 0] - d[1, 0, 1])
        scope = SCOPE_BINARY_UNIFORM
    else:
        logger.debug(f"convexity report for |X|={tensor.x_size}, |Y|={tensor.y_size} uses the general test")

    return ConvexityReport(
        e1=e1,
        e2=e2,
        hessian_min_eigenvalue=min_eig,
        is_convex=bool(min_eig >= -tol),
        is_affine=affine,
        scope=scope,
        hessian=H,
        descent_direction=direction,
    )
