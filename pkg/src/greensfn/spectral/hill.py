"""Hill-discriminant shooting for the periodic eigenvalues of the comparison operator.

For a periodic, sign-definite kernel with |G| = sign * G, lam is an eigenvalue of
u -> 2 int |G| eta u exactly when a2 u'' + a1 u' + (a0 - 2 sign eta / lam) u = 0
has a periodic solution, i.e. when tr M(lam) = 1 + det M(lam) for the monodromy M.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq, minimize_scalar

from greensfn.core.grid import Grid, SampledFunction
from greensfn.core.ivp import solve_ivp2
from greensfn.greens.kernel import GreensKernel
from greensfn.models.coefficients import CoefficientSet
from greensfn.spectral.comparison import EtaLike, build_comparison, eta_values
from greensfn.utils.errors import SpectralError
from greensfn.utils.logger import setup_logger

logger = setup_logger(__name__)

SCAN_POINTS = 200
TANGENT_TOL = 1e-6
ROOT_XTOL = 1e-10


def _eta_callable(eta: EtaLike, grid: Grid) -> Callable[[np.ndarray], np.ndarray]:
    if callable(eta) and not isinstance(eta, SampledFunction):
        return lambda t: np.broadcast_to(np.asarray(eta(t), dtype=float), np.shape(t))
    values = eta_values(eta, grid)
    if np.all(values == values[0]):
        v = float(values[0])
        return lambda t: np.full(np.shape(t), v)
    return CubicSpline(grid.nodes, values)


def _default_coeffs() -> CoefficientSet:
    return CoefficientSet.constant(1.0, 0.0, -1.0)


def monodromy(
    eta: EtaLike,
    lam: float,
    grid: Grid,
    coeffs: Optional[CoefficientSet] = None,
    kernel_sign: int = -1,
) -> np.ndarray:
    """Monodromy matrix [[u1(1), u2(1)], [u1'(1), u2'(1)]] of the shifted equation."""
    if lam <= 0.0:
        raise SpectralError(f"lambda must be positive, got {lam}")
    coeffs = coeffs or _default_coeffs()
    eta_fn = _eta_callable(eta, grid)
    shift = -2.0 * kernel_sign / lam
    base_a0 = coeffs.a0
    shifted = coeffs.model_copy(update={
        "a0": lambda t: np.asarray(base_a0(t), dtype=float) + shift * eta_fn(t),
    })
    y, dy = solve_ivp2(shifted, None, [1.0, 0.0], [0.0, 1.0], grid)
    return np.array([[y.values[-1, 0], y.values[-1, 1]], [dy.values[-1, 0], dy.values[-1, 1]]])


def hill_discriminant(
    eta: EtaLike,
    lam: float,
    grid: Grid,
    coeffs: Optional[CoefficientSet] = None,
    kernel_sign: int = -1,
) -> float:
    """D(lam) = u1(1) + u2'(1); defaults to u'' = (1 - 2 eta / lam) u."""
    return float(np.trace(monodromy(eta, lam, grid, coeffs, kernel_sign)))


def _liouville_target(coeffs: Optional[CoefficientSet], grid: Grid) -> float:
    """1 + det M = 1 + exp(-int a1/a2), which is 2 when a1 vanishes."""
    if coeffs is None:
        return 2.0
    a2, a1, _ = coeffs.evaluate(grid.nodes)
    if not np.any(a1):
        return 2.0
    return 1.0 + float(np.exp(-(grid.weights @ (a1 / a2))))


@dataclass(frozen=True)
class HillRoot:
    radius: float
    found: bool
    method: str
    evaluations: int


def hill_radius(
    eta: EtaLike,
    lambda_max: float,
    grid: Grid,
    coeffs: Optional[CoefficientSet] = None,
    kernel_sign: int = -1,
    subdivisions: int = SCAN_POINTS,
) -> HillRoot:
    """Largest lam in (0, lambda_max] with a periodic solution of the shifted equation.

    The interval is scanned from the top; the first sign change of D - target is
    refined with brentq. Without one, a near-zero minimum of |D - target| is
    accepted as a tangential root; otherwise the radius is 0 and ``found`` False.
    """
    if lambda_max <= 0.0:
        raise SpectralError(f"lambda_max must be positive, got {lambda_max}")
    eta_values(eta, grid)
    target = _liouville_target(coeffs, grid)
    evaluations = 0

    def phi(lam: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return hill_discriminant(eta, lam, grid, coeffs, kernel_sign) - target

    lams = lambda_max * np.arange(1, subdivisions + 1) / subdivisions
    values = np.empty_like(lams)
    for k in range(subdivisions - 1, -1, -1):
        values[k] = phi(lams[k])
        if values[k] == 0.0:
            return HillRoot(float(lams[k]), True, "exact", evaluations)
        if k < subdivisions - 1 and values[k] * values[k + 1] < 0.0:
            root = brentq(phi, lams[k], lams[k + 1], xtol=ROOT_XTOL)
            logger.info(
                "Hill scan bracket found",
                extra={"bracket": [float(lams[k]), float(lams[k + 1])], "root": root},
            )
            return HillRoot(float(root), True, "bracket", evaluations)

    k = int(np.argmin(np.abs(values)))
    if abs(values[k]) < TANGENT_TOL:
        lo, hi = lams[max(k - 1, 0)], lams[min(k + 1, subdivisions - 1)]
        res = minimize_scalar(lambda lam: abs(phi(lam)), bounds=(lo, hi), method="bounded",
                              options={"xatol": ROOT_XTOL})
        return HillRoot(float(res.x), True, "tangent", evaluations)

    logger.info("Hill scan found no root", extra={"lambda_max": lambda_max, "min_gap": float(np.min(np.abs(values)))})
    return HillRoot(0.0, False, "none", evaluations)


def hill_radius_for_kernel(
    kernel: GreensKernel, eta: EtaLike, grid: Grid, lambda_max: Optional[float] = None
) -> HillRoot:
    """Hill route for a given kernel; refuses non-periodic or sign-indefinite kernels.

    The default search ceiling is slightly above the largest row sum of the
    comparison matrix, which bounds its spectral radius.
    """
    if not kernel.is_periodic:
        raise SpectralError("the Hill route needs periodic boundary conditions")
    sign = kernel.sign(grid)
    if sign == 0:
        raise SpectralError("the Hill route needs a sign-definite kernel (|G| = +/-G)")
    if lambda_max is None:
        lambda_max = 1.05 * float(build_comparison(kernel, eta, grid).row_sums.max()) + 1e-3
    return hill_radius(eta, lambda_max, grid, kernel.coeffs, sign)
