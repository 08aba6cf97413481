"""Tests for the Hammerstein and Nemytskii operators."""
import numpy as np
import pytest

from greensfn.core.grid import Grid, SampledFunction, lp_norms
from greensfn.funnel.probes import random_trig_polynomial
from greensfn.greens import kernel_norms
from greensfn.hammerstein.operators import Selection, apply_H, nemytskii, verify_rhs_metadata
from greensfn.models.rhs import RightHandSide


def zero_field(t, x):
    return np.zeros_like(x)


def test_single_valued_selection_ignores_strategy():
    """Test that every selection of a singleton is f0."""
    g = Grid(8)
    rhs = RightHandSide.single(lambda t, x: x ** 2 + t[:, None])
    x = SampledFunction(g, np.linspace(-1.0, 1.0, g.size))
    expected = x.values ** 2 + g.nodes[:, None]
    for sel in (Selection.center(), Selection.random(3), Selection.nearest_to(x)):
        np.testing.assert_allclose(nemytskii(rhs, x, sel).values, expected)


def test_nearest_selection_clamps_onto_box():
    """Test projection of v = 5 onto [-1, 1]^2."""
    g = Grid(8)
    rhs = RightHandSide.box(zero_field, 1.0, dim=2)
    x = SampledFunction.zeros(g, 2)
    v = SampledFunction(g, np.full((g.size, 2), 5.0))
    w = nemytskii(rhs, x, Selection.nearest_to(v))
    np.testing.assert_array_equal(w.values, np.ones((g.size, 2)))


def test_random_selection_lies_in_box_and_is_seeded():
    """Test random selections stay in F(t, x) and repeat for equal seeds."""
    g = Grid(16)
    rhs = RightHandSide.box(lambda t, x: np.sin(x), lambda t, x: 0.5 + 0.0 * t, dim=3)
    x = SampledFunction(g, np.random.default_rng(1).normal(size=(g.size, 3)))
    w1 = nemytskii(rhs, x, Selection.random(7))
    w2 = nemytskii(rhs, x, Selection.random(7))
    np.testing.assert_array_equal(w1.values, w2.values)
    assert np.all(rhs.distance(g.nodes, x.values, w1.values) == 0.0)
    assert not np.allclose(w1.values, nemytskii(rhs, x, Selection.random(8)).values)


def test_nearest_selection_needs_target():
    """Test the nearest strategy without a target."""
    g = Grid(4)
    rhs = RightHandSide.box(zero_field, 1.0)
    with pytest.raises(ValueError):
        nemytskii(rhs, SampledFunction.zeros(g), Selection("nearest"))


def test_hammerstein_operator_of_constant(grid, xpp_minus_x):
    """Test H 1 = -1 for x'' - x = 1 with periodic conditions."""
    hu, dhu = apply_H(xpp_minus_x, SampledFunction(grid, np.ones(grid.size)))
    np.testing.assert_allclose(hu.scalar, -1.0, atol=1e-8)
    np.testing.assert_allclose(dhu.scalar, 0.0, atol=1e-7)


def test_hammerstein_operator_is_componentwise(grid, closed_minus_x):
    """Test that vector inputs are mapped column by column."""
    t = grid.nodes
    u = SampledFunction(grid, np.column_stack([np.ones_like(t), np.cos(2 * np.pi * t)]))
    hu, _ = apply_H(closed_minus_x, u)
    np.testing.assert_allclose(hu.values[:, 0], -1.0, atol=1e-8)
    np.testing.assert_allclose(hu.values[:, 1], -np.cos(2 * np.pi * t) / (4 * np.pi ** 2 + 1), atol=1e-8)


def test_verify_rhs_metadata():
    """Test that exact metadata passes and an understated modulus is caught."""
    exact = RightHandSide.linear(0.5, lambda t: np.cos(t))
    report = verify_rhs_metadata(exact, samples=500)
    assert report["growth"] <= 1e-12
    assert report["lipschitz"] <= 1e-12

    wrong = RightHandSide.single(lambda t, x: 2.0 * x, mu=1.0)
    report = verify_rhs_metadata(wrong, samples=500)
    assert report["lipschitz"] > 0.0
    assert report["growth"] is None


@pytest.mark.parametrize("name", ["closed_minus_x", "closed_xp_x"])
def test_hammerstein_operator_norm_bound(request, coarse_grid, name):
    """Test ||H u||_sup <= sup|G| ||u||_1 on random forcings of both signs."""
    kernel = request.getfixturevalue(name)
    sup_abs = kernel_norms(kernel, coarse_grid).sup_abs
    rng = np.random.default_rng(5)
    for degree in range(6):
        u = SampledFunction(coarse_grid, random_trig_polynomial(rng, coarse_grid, degree, dim=2)[0])
        hu, _ = apply_H(kernel, u)
        assert hu.sup() <= sup_abs * lp_norms(u)[0] * (1.0 + 1e-6)