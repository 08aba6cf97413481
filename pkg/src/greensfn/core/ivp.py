"""Fixed-step RK4 for a2 y'' + a1 y' + a0 y = forcing on the grid."""
from typing import TYPE_CHECKING, Optional, Sequence, Tuple, Union

import numpy as np

from greensfn.core.grid import Grid, SampledFunction
from greensfn.utils.errors import CoefficientSingularityError, GridError

if TYPE_CHECKING:
    from greensfn.models.coefficients import CoefficientSet

SINGULARITY_TOL = 1e-12


def _midpoint_values(values: np.ndarray) -> np.ndarray:
    """Cubic interpolation of node samples at the interval midpoints."""
    y = values
    if y.shape[0] < 4:
        return 0.5 * (y[:-1] + y[1:])
    mid = np.empty((y.shape[0] - 1,) + y.shape[1:])
    mid[1:-1] = (-y[:-3] + 9.0 * y[1:-2] + 9.0 * y[2:-1] - y[3:]) / 16.0
    mid[0] = (5.0 * y[0] + 15.0 * y[1] - 5.0 * y[2] + y[3]) / 16.0
    mid[-1] = (5.0 * y[-1] + 15.0 * y[-2] - 5.0 * y[-3] + y[-4]) / 16.0
    return mid


def solve_ivp2(
    coeffs: "CoefficientSet",
    forcing: Optional[SampledFunction],
    y0: Union[float, Sequence[float], np.ndarray],
    dy0: Union[float, Sequence[float], np.ndarray],
    grid: Grid,
) -> Tuple[SampledFunction, SampledFunction]:
    """Integrate the second-order IVP from t = 0 to t = 1 with step 1/n.

    The system y' = v, v' = (forcing - a1 v - a0 y) / a2 is advanced with the
    classical Runge-Kutta scheme; components of y are independent, so several
    initial conditions can be integrated at once by stacking them in ``y0``.
    Forcing samples are interpolated to the midpoints with a cubic stencil.

    Raises:
        CoefficientSingularityError: |a2| < 1e-12 on a node or midpoint.
    """
    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    v = np.atleast_1d(np.asarray(dy0, dtype=float)).copy()
    if y.shape != v.shape or y.ndim != 1:
        raise GridError(f"initial values must be matching vectors, got {y.shape} and {v.shape}")
    dim = y.shape[0]

    t = grid.nodes
    h = grid.h
    mid = t[:-1] + 0.5 * h
    a2, a1, a0 = coeffs.evaluate(t)
    m2, m1, m0 = coeffs.evaluate(mid)
    for a, where in ((a2, t), (m2, mid)):
        bad = np.flatnonzero(np.abs(a) < SINGULARITY_TOL)
        if bad.size:
            raise CoefficientSingularityError(
                f"leading coefficient vanishes at t={where[bad[0]]:.6g}", t=float(where[bad[0]])
            )

    if forcing is None:
        f_nodes = np.zeros((grid.size, dim))
    else:
        grid.check_same(forcing.grid)
        f_nodes = np.broadcast_to(forcing.values, (grid.size, dim)) if forcing.dim == 1 else forcing.values
        if f_nodes.shape[1] != dim:
            raise GridError(f"forcing has dimension {forcing.dim}, initial data {dim}")
    f_mid = _midpoint_values(np.asarray(f_nodes, dtype=float))

    ys = np.empty((grid.size, dim))
    vs = np.empty((grid.size, dim))
    ys[0], vs[0] = y, v

    def accel(f: np.ndarray, b2: float, b1: float, b0: float, yy: np.ndarray, vv: np.ndarray) -> np.ndarray:
        return (f - b1 * vv - b0 * yy) / b2

    for i in range(grid.n):
        k1y = v
        k1v = accel(f_nodes[i], a2[i], a1[i], a0[i], y, v)
        k2y = v + 0.5 * h * k1v
        k2v = accel(f_mid[i], m2[i], m1[i], m0[i], y + 0.5 * h * k1y, k2y)
        k3y = v + 0.5 * h * k2v
        k3v = accel(f_mid[i], m2[i], m1[i], m0[i], y + 0.5 * h * k2y, k3y)
        k4y = v + h * k3v
        k4v = accel(f_nodes[i + 1], a2[i + 1], a1[i + 1], a0[i + 1], y + h * k3y, k4y)
        y = y + (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        ys[i + 1], vs[i + 1] = y, v

    return SampledFunction(grid, ys), SampledFunction(grid, vs)
