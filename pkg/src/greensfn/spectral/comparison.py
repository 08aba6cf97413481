"""Nystrom discretization of the comparison operator and its Perron root."""
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np

from greensfn.core.grid import Grid, SampledFunction, lp_norms
from greensfn.greens.kernel import GreensKernel
from greensfn.models.reports import KernelNorms
from greensfn.utils.errors import SpectralError
from greensfn.utils.logger import setup_logger

logger = setup_logger(__name__)

EtaLike = Union[float, Callable[[np.ndarray], np.ndarray], SampledFunction, np.ndarray]


def eta_values(eta: EtaLike, grid: Grid) -> np.ndarray:
    """Node samples of a nonnegative weight eta."""
    if isinstance(eta, SampledFunction):
        grid.check_same(eta.grid)
        values = eta.scalar
    elif callable(eta):
        values = np.asarray(eta(grid.nodes), dtype=float)
    else:
        values = np.asarray(eta, dtype=float)
    values = np.broadcast_to(values, grid.nodes.shape).astype(float)
    if np.any(values < 0.0) or not np.all(np.isfinite(values)):
        raise SpectralError("eta must be finite and nonnegative on the grid")
    return values


@dataclass(frozen=True)
class ComparisonMatrix:
    """M[i, j] = 2 w_ij |G(t_i, s_j)| eta(s_j) with branch-split weights w_ij."""
    grid: Grid
    entries: np.ndarray

    @property
    def row_sums(self) -> np.ndarray:
        return self.entries.sum(axis=1)


def build_comparison(kernel: GreensKernel, eta: EtaLike, grid: Grid) -> ComparisonMatrix:
    values = eta_values(eta, grid)
    entries = 2.0 * kernel.matrices(grid).abs_operator * values[None, :]
    return ComparisonMatrix(grid=grid, entries=entries)


def perturbed_comparison(kernel: GreensKernel, eta: EtaLike, n: int, grid: Grid) -> ComparisonMatrix:
    """Comparison matrix of eta + 1/n, the weight of the perturbed right-hand side."""
    if n <= 0:
        raise SpectralError(f"perturbation index must be positive, got {n}")
    return build_comparison(kernel, eta_values(eta, grid) + 1.0 / n, grid)


def radius_norm_bound(norms: KernelNorms, eta: EtaLike, grid: Grid) -> float:
    """2 sup||G(t,.)||_2 ||eta||_2, an upper bound for the comparison radius."""
    l2 = lp_norms(SampledFunction(grid, eta_values(eta, grid)))[1]
    return 2.0 * norms.sup_l2_rows * l2


@dataclass(frozen=True)
class RadiusEstimate:
    radius: float
    iterations: int
    bracket: Tuple[float, float]
    converged: bool


def power_iteration(
    M: Union[ComparisonMatrix, np.ndarray], tol: float = 1e-12, max_iter: int = 10_000
) -> RadiusEstimate:
    """Perron root of a nonnegative matrix from the all-ones start vector.

    Successive Rayleigh quotients are compared against ``tol``; the
    Collatz-Wielandt bracket min/max (Mx)_i / x_i is reported alongside.
    """
    A = M.entries if isinstance(M, ComparisonMatrix) else np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise SpectralError(f"expected a square matrix, got shape {A.shape}")
    if np.any(A < 0.0):
        raise SpectralError("power iteration needs a nonnegative matrix")

    x = np.ones(A.shape[0]) / np.sqrt(A.shape[0])
    rq_prev = np.inf
    bracket = (0.0, 0.0)
    for k in range(1, max_iter + 1):
        y = A @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return RadiusEstimate(0.0, k, (0.0, 0.0), True)
        rq = float(x @ y / (x @ x))
        pos = x > 0.0
        ratios = y[pos] / x[pos]
        bracket = (float(ratios.min()), float(ratios.max()))
        if abs(rq - rq_prev) <= tol:
            return RadiusEstimate(rq, k, bracket, True)
        rq_prev = rq
        x = y / norm
    return RadiusEstimate(float(rq_prev), max_iter, bracket, False)


def power_radius(M: Union[ComparisonMatrix, np.ndarray], tol: float = 1e-12, max_iter: int = 10_000) -> float:
    """Spectral radius of a nonnegative matrix by power iteration.

    Raises:
        SpectralError: no convergence within ``max_iter``; the last bracket is quoted.
    """
    est = power_iteration(M, tol=tol, max_iter=max_iter)
    if not est.converged:
        raise SpectralError(
            f"power iteration did not converge in {max_iter} steps; "
            f"radius in [{est.bracket[0]:.12g}, {est.bracket[1]:.12g}]"
        )
    logger.debug("Power iteration converged", extra={"radius": est.radius, "iterations": est.iterations})
    return est.radius
