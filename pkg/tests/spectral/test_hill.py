"""Tests for the Hill-discriminant route."""
import numpy as np
import pytest

from greensfn.core.grid import Grid
from greensfn.greens import build_greens
from greensfn.models.coefficients import BoundaryConditions, CoefficientSet
from greensfn.spectral import build_comparison, hill_discriminant, hill_radius, hill_radius_for_kernel, power_radius
from greensfn.utils.errors import SpectralError


@pytest.mark.parametrize("eta", [0.1, 0.3, 0.45])
def test_hill_radius_constant_eta(grid, xpp_minus_x, eta):
    """Test the largest periodic eigenvalue is 2 eta and agrees with power iteration."""
    root = hill_radius_for_kernel(xpp_minus_x, eta, grid)
    assert root.found
    assert root.method == "bracket"
    assert root.radius == pytest.approx(2 * eta, abs=1e-3)
    power = power_radius(build_comparison(xpp_minus_x, eta, grid))
    assert abs(root.radius - power) <= 2e-3


def test_hill_radius_with_first_order_term(grid, xpp_xp_x):
    """Test x'' - x' - x, where the target is 1 + e rather than 2."""
    root = hill_radius_for_kernel(xpp_xp_x, 0.3, grid)
    assert root.found
    assert root.radius == pytest.approx(0.6, abs=1e-3)


def test_discriminant_at_known_values():
    """Test D = 2 cosh(1) for eta = 0 and D = 2 at lam = 2 eta."""
    g = Grid(256)
    assert hill_discriminant(0.0, 1.0, g) == pytest.approx(2 * np.cosh(1.0), rel=1e-9)
    assert hill_discriminant(0.25, 0.5, g) == pytest.approx(2.0, abs=1e-12)


def test_zero_eta_has_no_root(grid, xpp_minus_x):
    """Test that eta = 0 yields radius 0 without a root."""
    root = hill_radius_for_kernel(xpp_minus_x, 0.0, grid)
    assert root.radius == 0.0
    assert root.found is False


def test_hill_refuses_unsuitable_kernels():
    """Test non-periodic and sign-indefinite kernels."""
    g = Grid(64)
    dirichlet = build_greens(CoefficientSet.constant(1.0, 0.0, -1.0), BoundaryConditions.dirichlet(), g)
    with pytest.raises(SpectralError, match="periodic"):
        hill_radius_for_kernel(dirichlet, 0.3, g)
    oscillating = build_greens(CoefficientSet.constant(1.0, 0.0, 20.0), BoundaryConditions.periodic(), g)
    with pytest.raises(SpectralError, match="sign-definite"):
        hill_radius_for_kernel(oscillating, 0.3, g)


def test_hill_rejects_bad_arguments():
    """Test negative eta and a nonpositive search ceiling."""
    g = Grid(64)
    with pytest.raises(SpectralError):
        hill_radius(-0.1, 1.0, g)
    with pytest.raises(SpectralError):
        hill_radius(0.1, 0.0, g)
    with pytest.raises(SpectralError):
        hill_discriminant(0.1, -1.0, g)


def test_hill_radius_variable_eta(grid, xpp_minus_x):
    """Test eta = 0.3 + 0.1 sin(2 pi t): both routes give about 0.6008 and agree within 2e-3."""
    eta = lambda t: 0.3 + 0.1 * np.sin(2 * np.pi * t)
    root = hill_radius_for_kernel(xpp_minus_x, eta, grid)
    power = power_radius(build_comparison(xpp_minus_x, eta, grid))
    assert root.found
    assert abs(root.radius - power) <= 2e-3
    assert root.radius == pytest.approx(0.6008, abs=1e-3)
