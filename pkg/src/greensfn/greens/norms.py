"""Kernel norms entering the growth, Lipschitz and comparison conditions."""
import numpy as np

from greensfn.core.grid import Grid
from greensfn.greens.kernel import GreensKernel
from greensfn.models.reports import KernelNorms

DIAGONAL_REFINEMENT = 4


def _row_l2(wl: np.ndarray, wu: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    rows = (wl * lower ** 2).sum(axis=1) + (wu * upper ** 2).sum(axis=1)
    return np.sqrt(np.maximum(rows, 0.0))


def kernel_norms(kernel: GreensKernel, grid: Grid) -> KernelNorms:
    """sup_t ||G(t,.)||_2, sup_t ||dG/dt(t,.)||_2, sup |G| and || ||d2G/dt2(t,.)||_2 ||_2.

    Row norms use branch-split quadrature so the diagonal kink stays between
    two smooth segments. sup |G| is taken over the node lattice and a refined
    sampling of the diagonal.
    """
    km = kernel.matrices(grid)
    sup_l2 = float(_row_l2(km.wl, km.wu, km.lower, km.upper).max())
    sup_l2_dt = float(_row_l2(km.wl, km.wu, km.lower_dt, km.upper_dt).max())

    diag_t = np.linspace(0.0, 1.0, DIAGONAL_REFINEMENT * grid.n + 1)
    sup_abs = max(
        float(np.abs(km.lattice).max()),
        float(np.abs(kernel.lower(diag_t, diag_t)).max()),
    )

    a2, a1, a0 = kernel.coeffs.evaluate(grid.nodes)
    a2, a1, a0 = a2[:, None], a1[:, None], a0[:, None]
    lower_tt = -(a1 * km.lower_dt + a0 * km.lower) / a2
    upper_tt = -(a1 * km.upper_dt + a0 * km.upper) / a2
    rows_tt = _row_l2(km.wl, km.wu, lower_tt, upper_tt)
    l2_tt = float(np.sqrt(max(grid.weights @ rows_tt ** 2, 0.0)))

    return KernelNorms(sup_l2_rows=sup_l2, sup_l2_rows_dt=sup_l2_dt, sup_abs=sup_abs, l2_of_l2_dt2=l2_tt)
