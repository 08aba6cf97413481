"""Tests for grids, quadrature and sampled functions."""
import numpy as np
import pytest

from greensfn.core.grid import (
    Grid,
    SampledFunction,
    c1_norm,
    first_derivative,
    lp_norms,
    quadrature,
    second_derivative,
    simpson_weights,
)
from greensfn.utils.errors import GridError


def test_grid_nodes_and_weights():
    """Test node placement and Simpson weights."""
    g = Grid(8)
    assert g.size == 9
    assert g.h == pytest.approx(0.125)
    assert g.nodes[0] == 0.0 and g.nodes[-1] == 1.0
    assert g.weights.sum() == pytest.approx(1.0)
    assert g.weights[1] == pytest.approx(4.0 * g.h / 3.0)


@pytest.mark.parametrize("n", [0, -2, 7, 2])
def test_grid_rejects_bad_counts(n):
    """Test that odd, nonpositive and too-small subinterval counts are refused."""
    with pytest.raises(GridError):
        Grid(n)


def test_simpson_weights_need_even_count():
    """Test the standalone Simpson weights helper."""
    with pytest.raises(GridError):
        simpson_weights(3, 0.1)


def test_quadrature_is_exact_for_cubics():
    """Test that Simpson integrates t^3 exactly."""
    g = Grid(8)
    assert quadrature(g.nodes ** 3, g) == pytest.approx(0.25, abs=1e-14)
    f = SampledFunction.from_callable(g, lambda t: 3 * t ** 2)
    assert quadrature(f) == pytest.approx(1.0, abs=1e-14)


def test_quadrature_needs_grid_for_raw_values():
    """Test that raw arrays need a grid."""
    with pytest.raises(GridError):
        quadrature(np.ones(5))


@pytest.mark.parametrize("start,stop", [(0, 1), (0, 2), (0, 3), (0, 5), (3, 4), (7, 8), (2, 8), (1, 8)])
def test_segment_weights_are_cubic_exact(start, stop):
    """Test every segment parity, including single intervals at both ends."""
    g = Grid(8)
    w = g.segment_weights(start, stop)
    t = g.nodes
    exact = (t[stop] ** 4 - t[start] ** 4) / 4.0
    assert w @ t ** 3 == pytest.approx(exact, abs=1e-14)
    assert w @ np.ones_like(t) == pytest.approx(t[stop] - t[start], abs=1e-14)


def test_segment_weights_reject_bad_range():
    """Test segments outside the grid."""
    with pytest.raises(GridError):
        Grid(8).segment_weights(3, 9)


def test_branch_weights_split_the_interval():
    """Test that lower and upper rows add up to the whole interval."""
    g = Grid(16)
    lower, upper = g.branch_weights
    cubic = g.nodes ** 3 - g.nodes
    totals = lower @ cubic + upper @ cubic
    np.testing.assert_allclose(totals, -0.25, atol=1e-14)
    np.testing.assert_allclose(lower @ np.ones(g.size), g.nodes, atol=1e-14)


def test_sampled_function_shapes():
    """Test reshaping of scalar samples and dimension checks."""
    g = Grid(4)
    f = SampledFunction(g, np.arange(5.0))
    assert f.values.shape == (5, 1)
    assert f.dim == 1
    np.testing.assert_array_equal(f.scalar, np.arange(5.0))

    with pytest.raises(GridError):
        SampledFunction(g, np.zeros(4))
    with pytest.raises(GridError):
        SampledFunction(g, np.zeros((5, 2))).scalar


def test_sampled_function_arithmetic():
    """Test operators and grid mismatch detection."""
    g = Grid(4)
    f = SampledFunction(g, np.ones(5))
    assert ((f + f) * 0.5 - f).sup() == 0.0
    assert (-f).values.min() == -1.0
    assert (2.0 * f + 1.0).sup() == 3.0
    with pytest.raises(GridError):
        f + SampledFunction(Grid(6), np.ones(7))


def test_lp_norms_use_pointwise_euclidean_norm():
    """Test norms of a constant vector field."""
    g = Grid(8)
    f = SampledFunction(g, np.tile([3.0, 4.0], (g.size, 1)))
    l1, l2, sup = lp_norms(f)
    assert l1 == pytest.approx(5.0)
    assert l2 == pytest.approx(5.0)
    assert sup == pytest.approx(5.0)
    assert c1_norm(f, SampledFunction.zeros(g, 2)) == pytest.approx(5.0)


def test_finite_differences_are_exact_for_low_degree():
    """Test first derivatives on quadratics and second derivatives on cubics."""
    g = Grid(10)
    t = g.nodes
    np.testing.assert_allclose(first_derivative(t ** 2, g), 2 * t, atol=1e-12)
    np.testing.assert_allclose(second_derivative(t ** 3, g), 6 * t, atol=1e-9)


@pytest.mark.parametrize("scale", [-2.5, 0.3, 0.0])
def test_lp_norms_scale_with_the_function(scale):
    """Test lp_norms(c f) = |c| lp_norms(f) componentwise."""
    g = Grid(64)
    rng = np.random.default_rng(11)
    f = SampledFunction(g, rng.uniform(-1.0, 1.0, (g.size, 3)))
    for scaled, base in zip(lp_norms(scale * f), lp_norms(f)):
        assert scaled == pytest.approx(abs(scale) * base, rel=1e-13, abs=1e-15)


def test_lp_norms_of_identity_and_zero():
    """Test ||t||_2 = 1/sqrt(3) and the zero function."""
    g = Grid(128)
    assert lp_norms(SampledFunction(g, g.nodes))[1] == pytest.approx(1.0 / np.sqrt(3.0), abs=1e-8)
    assert lp_norms(SampledFunction.zeros(g, 2)) == (0.0, 0.0, 0.0)
