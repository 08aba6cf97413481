"""Fundamental system, boundary determinant and the inhomogeneous lift."""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from greensfn.core.grid import Grid, SampledFunction
from greensfn.core.ivp import solve_ivp2
from greensfn.models.coefficients import BoundaryConditions, CoefficientSet
from greensfn.utils.errors import DegenerateWronskianError, IncompatibleProblemError
from greensfn.utils.logger import setup_logger

logger = setup_logger(__name__)

WRONSKIAN_TOL = 1e-10
DETERMINANT_TOL = 1e-8


@dataclass(frozen=True)
class FundamentalSystem:
    """Node samples of u1, u2 (canonical initial data) and their derivatives."""
    grid: Grid
    u1: np.ndarray
    du1: np.ndarray
    u2: np.ndarray
    du2: np.ndarray

    @property
    def wronskian(self) -> np.ndarray:
        return self.u1 * self.du2 - self.u2 * self.du1

    def as_tuple(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.u1, self.du1, self.u2, self.du2

    def boundary_matrix(self, bc: BoundaryConditions) -> np.ndarray:
        """The 2x2 matrix [B_i u_j]."""
        u = np.column_stack([self.u1, self.u2])
        du = np.column_stack([self.du1, self.du2])
        return bc.apply(u[0], du[0], u[-1], du[-1])


def fundamental_system(coeffs: CoefficientSet, grid: Grid) -> FundamentalSystem:
    """Solve L u = 0 with (u1, u1')(0) = (1, 0) and (u2, u2')(0) = (0, 1) in one RK4 sweep."""
    coeffs.check(grid)
    y, dy = solve_ivp2(coeffs, None, [1.0, 0.0], [0.0, 1.0], grid)
    fs = FundamentalSystem(grid, y.values[:, 0], dy.values[:, 0], y.values[:, 1], dy.values[:, 1])
    w = fs.wronskian
    bad = np.flatnonzero(~np.isfinite(w) | (np.abs(w) < WRONSKIAN_TOL))
    if bad.size:
        raise DegenerateWronskianError(
            f"Wronskian degenerates at t={grid.nodes[bad[0]]:.6g} (|W| < {WRONSKIAN_TOL:g})"
        )
    return fs


def compatibility_determinant(
    coeffs: CoefficientSet, bc: BoundaryConditions, grid: Grid, fs: Optional[FundamentalSystem] = None
) -> float:
    """det [B_i u_j]; |det| < 1e-8 means the reduced homogeneous problem has nontrivial solutions.

    The value scales with the boundary rows; only the zero test is meaningful.
    """
    fs = fs or fundamental_system(coeffs, grid)
    return float(np.linalg.det(fs.boundary_matrix(bc)))


def require_compatible(det: float) -> None:
    if abs(det) < DETERMINANT_TOL:
        raise IncompatibleProblemError(
            f"homogeneous problem has nontrivial solutions: det [B_i u_j] = {det:.6g}", determinant=det
        )


def homogeneous_lift(
    coeffs: CoefficientSet, bc: BoundaryConditions, grid: Grid, dim: Optional[int] = None
) -> Tuple[SampledFunction, SampledFunction]:
    """The solution h of L h = 0, B_i h = d_i, returned with h'.

    ``dim`` defaults to the dimension of the targets (1 when homogeneous).
    """
    fs = fundamental_system(coeffs, grid)
    bm = fs.boundary_matrix(bc)
    det = float(np.linalg.det(bm))
    require_compatible(det)
    if dim is None:
        dim = len(bc.d[0]) if bc.d is not None else 1
    d = bc.targets(dim)
    if not np.any(d):
        zero = SampledFunction.zeros(grid, dim)
        return zero, zero
    alpha = np.linalg.solve(bm, d)  # (2, dim)
    h = np.outer(fs.u1, alpha[0]) + np.outer(fs.u2, alpha[1])
    dh = np.outer(fs.du1, alpha[0]) + np.outer(fs.du2, alpha[1])
    logger.debug("Built boundary lift", extra={"det": det, "dim": dim})
    return SampledFunction(grid, h), SampledFunction(grid, dh)
