"""Tests comparing Green's function solutions with the finite-difference oracle."""
import numpy as np
import pytest

from greensfn.core.grid import Grid, SampledFunction
from greensfn.hammerstein.oracle import fd_oracle
from greensfn.hammerstein.picard import picard_solve
from greensfn.models.coefficients import BoundaryConditions, CoefficientSet
from greensfn.models.rhs import RightHandSide


def forcing(t):
    return np.cos(2 * np.pi * t) + 0.5 * np.sin(4 * np.pi * t)


@pytest.mark.parametrize("kernel_name", ["xpp_minus_x", "xpp_xp_x"])
@pytest.mark.parametrize("lam", [0.0, 0.3, -0.3])
def test_greens_solution_agrees_with_oracle(request, grid, kernel_name, lam):
    """Test x = h + H(w) against central differences for f = lam x + g."""
    kernel = request.getfixturevalue(kernel_name)
    sol = picard_solve(kernel, SampledFunction.zeros(grid), RightHandSide.linear(lam, forcing), tol=1e-12)
    ref = fd_oracle(kernel.coeffs, kernel.bc, lam, forcing, grid)
    tol = max(1e-4, 20.0 / grid.n ** 2)
    assert np.max(np.abs(sol.x.values - ref.values)) <= tol


def test_oracle_with_boundary_targets():
    """Test x'' - x = 0, x(0) = 1, x(1) = 0 against sinh(1 - t)/sinh(1)."""
    g = Grid(256)
    ref = fd_oracle(CoefficientSet.constant(1.0, 0.0, -1.0), BoundaryConditions.dirichlet([1.0], [0.0]), 0.0, None, g)
    np.testing.assert_allclose(ref.scalar, np.sinh(1.0 - g.nodes) / np.sinh(1.0), atol=1e-4)


def test_oracle_vector_forcing():
    """Test that each component of a vector forcing is solved independently."""
    g = Grid(128)
    coeffs = CoefficientSet.constant(1.0, 0.0, -1.0)
    bc = BoundaryConditions.periodic()
    t = g.nodes
    forcing_2d = SampledFunction(g, np.column_stack([np.ones_like(t), np.cos(2 * np.pi * t)]))
    ref = fd_oracle(coeffs, bc, 0.0, forcing_2d, g)
    assert ref.dim == 2
    np.testing.assert_allclose(ref.values[:, 0], -1.0, atol=1e-10)
    np.testing.assert_allclose(ref.values[:, 1], -np.cos(2 * np.pi * t) / (4 * np.pi ** 2 + 1), atol=1e-4)
