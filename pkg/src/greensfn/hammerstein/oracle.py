"""Finite-difference reference solver for linear right-hand sides f(t, x) = lam x + g(t)."""
import warnings
from typing import Callable, Optional, Union

import numpy as np
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import MatrixRankWarning, spsolve

from greensfn.core.grid import Grid, SampledFunction
from greensfn.models.coefficients import BoundaryConditions, CoefficientSet
from greensfn.utils.errors import IncompatibleProblemError
from greensfn.utils.logger import setup_logger

logger = setup_logger(__name__)


def _forcing_values(g: Union[None, Callable, SampledFunction], grid: Grid, dim: int) -> np.ndarray:
    if g is None:
        return np.zeros((grid.size, dim))
    if isinstance(g, SampledFunction):
        grid.check_same(g.grid)
        values = g.values
    else:
        values = np.asarray(g(grid.nodes), dtype=float)
        if values.ndim <= 1:
            values = np.broadcast_to(values, grid.nodes.shape)[:, None]
    return np.broadcast_to(values, (grid.size, max(dim, values.shape[1]))).copy()


def _boundary_row(row: np.ndarray, n: int, h: float) -> dict:
    """Coefficients of B x in terms of node values, one-sided 3-point derivatives."""
    b1, b2, c1, c2 = row
    coef = {0: 0.0, 1: 0.0, 2: 0.0, n - 2: 0.0, n - 1: 0.0, n: 0.0}
    coef[0] += b1 - 3.0 * b2 / (2.0 * h)
    coef[1] += 4.0 * b2 / (2.0 * h)
    coef[2] += -b2 / (2.0 * h)
    coef[n] += c1 + 3.0 * c2 / (2.0 * h)
    coef[n - 1] += -4.0 * c2 / (2.0 * h)
    coef[n - 2] += c2 / (2.0 * h)
    return coef


def fd_oracle(
    coeffs: CoefficientSet,
    bc: BoundaryConditions,
    lam: float,
    g: Union[None, Callable[[np.ndarray], np.ndarray], SampledFunction],
    grid: Grid,
    dim: Optional[int] = None,
) -> SampledFunction:
    """Solve a2 x'' + a1 x' + (a0 - lam) x = g with B_i x = d_i by central differences.

    No Green's function is involved: rows 1..n-1 are the difference equation,
    rows 0 and n the two boundary functionals.

    Raises:
        IncompatibleProblemError: the discrete system is singular.
    """
    if dim is None:
        dim = len(bc.d[0]) if bc.d is not None else 1
    rhs = _forcing_values(g, grid, dim)
    dim = rhs.shape[1]
    targets = bc.targets(dim) if bc.d is not None else np.zeros((2, dim))

    n, h = grid.n, grid.h
    a2, a1, a0 = coeffs.evaluate(grid.nodes)
    A = lil_matrix((n + 1, n + 1))
    for i in range(1, n):
        A[i, i - 1] = a2[i] / h ** 2 - a1[i] / (2.0 * h)
        A[i, i] = -2.0 * a2[i] / h ** 2 + a0[i] - lam
        A[i, i + 1] = a2[i] / h ** 2 + a1[i] / (2.0 * h)
    for k, row in ((0, bc.block[0]), (n, bc.block[1])):
        for j, v in _boundary_row(row, n, h).items():
            A[k, j] = v

    b = rhs.copy()
    b[0] = targets[0]
    b[n] = targets[1]
    with warnings.catch_warnings():
        warnings.simplefilter("error", MatrixRankWarning)
        try:
            x = spsolve(A.tocsc(), b)
        except (MatrixRankWarning, RuntimeError) as e:
            raise IncompatibleProblemError(f"singular finite-difference system: {e}") from e
    x = np.asarray(x, dtype=float).reshape(n + 1, dim)
    if not np.all(np.isfinite(x)):
        raise IncompatibleProblemError("singular finite-difference system")
    logger.debug("Solved finite-difference oracle", extra={"n": n, "lam": lam, "dim": dim})
    return SampledFunction(grid, x)
