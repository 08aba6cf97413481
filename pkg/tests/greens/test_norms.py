"""Tests for kernel norms and derived thresholds."""
import numpy as np
import pytest

from greensfn.greens import kernel_norms

E = np.e
SUP_L2 = np.sqrt((E ** 2 + 2 * E - 1) / (4 * (E - 1) ** 2))
SUP_ABS = (E + 1) / (2 * (E - 1))


@pytest.mark.parametrize("name", ["xpp_minus_x", "closed_minus_x"])
def test_periodic_xpp_minus_x_norms(request, grid, name):
    """Test sup||G(t,.)||_2 ~ 1.00066 and sup|G| = (e+1)/(2(e-1))."""
    norms = kernel_norms(request.getfixturevalue(name), grid)
    assert norms.sup_l2_rows == pytest.approx(SUP_L2, rel=1e-4)
    assert norms.sup_l2_rows == pytest.approx(1.00066, abs=1e-5)
    assert norms.sup_abs == pytest.approx(SUP_ABS, abs=1e-4)
    assert norms.mu_l1_threshold == pytest.approx(0.924, abs=5e-4)


def test_derivative_and_second_derivative_norms(grid, closed_minus_x):
    """Test the dG/dt row norm and the L2 norm of d2G/dt2 rows (equal to G rows here)."""
    norms = kernel_norms(closed_minus_x, grid)
    dt_exact = np.sqrt((np.sinh(1.0) - 1.0) / (8.0 * np.sinh(0.5) ** 2))
    assert norms.sup_l2_rows_dt == pytest.approx(dt_exact, rel=1e-4)
    assert norms.l2_of_l2_dt2 == pytest.approx(SUP_L2, rel=1e-4)


@pytest.mark.parametrize("name", ["xpp_xp_x", "closed_xp_x"])
def test_periodic_xpp_xp_x_norms(request, grid, name):
    """Test sup||G(t,.)||_2 ~ 1.00065 and the growth threshold ~ 0.999."""
    norms = kernel_norms(request.getfixturevalue(name), grid)
    assert norms.sup_l2_rows == pytest.approx(1.00065, rel=1e-3)
    assert norms.sup_l2_rows ** 2 == pytest.approx(1.0013, rel=1e-3)
    assert norms.m_threshold == pytest.approx(0.999, abs=1e-3)


def test_periodic_xpp_minus_4x_norms(coarse_grid, xpp_minus_4x):
    """Test the norms of G = -cosh(2(|t-s| - 1/2))/(4 sinh 1)."""
    norms = kernel_norms(xpp_minus_4x, coarse_grid)
    assert norms.sup_abs == pytest.approx(np.cosh(1.0) / (4.0 * np.sinh(1.0)), rel=1e-5)
    sup_l2 = np.sqrt((0.5 + np.sinh(2.0) / 4.0) / (4.0 * np.sinh(1.0)) ** 2)
    assert norms.sup_l2_rows == pytest.approx(sup_l2, rel=1e-5)


def test_thresholds_dictionary(grid, closed_minus_x):
    """Test the reported thresholds are consistent with the norms."""
    norms = kernel_norms(closed_minus_x, grid)
    th = norms.thresholds()
    assert th["m"] == pytest.approx(1.0 / norms.sup_l2_rows)
    assert th["m_perturbed"] == pytest.approx(th["m"] - 1.0)
    assert th["eta_l2"] == pytest.approx(0.5 / norms.sup_l2_rows)
    assert th["mu_l1"] == pytest.approx(1.0 / norms.sup_abs)
