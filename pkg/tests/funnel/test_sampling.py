"""Tests for funnel sampling of box-valued problems."""
import json
import os

import numpy as np
import pytest

from greensfn.core.grid import Grid
from greensfn.funnel import FunnelBundle, sample_funnel, sample_funnel_async, selection_field
from greensfn.greens import kernel_norms
from greensfn.hammerstein.conditions import apriori_bounds
from greensfn.models.rhs import RightHandSide
from greensfn.utils.errors import ConditionError
from greensfn.utils.metrics import metrics


def zero_field(t, x):
    return np.zeros_like(x)


@pytest.fixture
def box_rhs():
    return RightHandSide.box(zero_field, 0.3, c=0.3, m=0.0, mu=0.0, alpha=0.3)


def test_selection_field_is_bounded_and_seeded():
    """Test values in [-1, 1] and reproducibility per generator seed."""
    g = Grid(64)
    a = selection_field(g, 2, np.random.default_rng(5))
    b = selection_field(g, 2, np.random.default_rng(5))
    assert a.shape == (g.size, 2)
    assert np.all(np.abs(a) <= 1.0)
    np.testing.assert_array_equal(a, b)


async def test_async_funnel_members_obey_apriori_bounds(coarse_grid, closed_minus_x, box_rhs):
    """Test every member converges and stays inside the sup and C1 bounds."""
    bundle = await sample_funnel_async(closed_minus_x, box_rhs, 8, 0, coarse_grid, workers=3, residual_tol=1e-2)
    bounds = apriori_bounds(kernel_norms(closed_minus_x, coarse_grid), box_rhs, coarse_grid)
    assert bundle.converged_count == 8
    assert bundle.seeds == list(range(8))
    assert bundle.within_bounds
    assert not bundle.low_confidence
    assert bundle.bound_R == pytest.approx(bounds.c1_bound)
    for sol in bundle.solutions:
        assert sol.x.sup() <= bounds.sup_norm_bound * 1.001
        assert sol.c1_norm() <= bounds.c1_bound * 1.001
    assert bundle.diameter_c1 > 0.0
    assert metrics.get("funnel_converged") == 8


def test_sync_funnel_is_deterministic(coarse_grid, closed_minus_x, box_rhs):
    """Test equal seeds give equal bundles and other seeds differ."""
    first = sample_funnel(closed_minus_x, box_rhs, 4, 11, coarse_grid, residual_tol=1e-2)
    second = sample_funnel(closed_minus_x, box_rhs, 4, 11, coarse_grid, residual_tol=1e-2, workers=1)
    other = sample_funnel(closed_minus_x, box_rhs, 4, 12, coarse_grid, residual_tol=1e-2)
    assert first.diameter_c1 == second.diameter_c1
    np.testing.assert_array_equal(first.solutions[2].x.values, second.solutions[2].x.values)
    assert first.diameter_c1 != other.diameter_c1


def test_diameter_grows_with_radius(coarse_grid, closed_minus_x):
    """Test matched seeds give a wider funnel for a wider box."""
    narrow = RightHandSide.box(zero_field, 0.1, c=0.1, m=0.0)
    wide = RightHandSide.box(zero_field, 0.3, c=0.3, m=0.0)
    d_narrow = sample_funnel(closed_minus_x, narrow, 6, 3, coarse_grid, residual_tol=1e-2).diameter_c1
    d_wide = sample_funnel(closed_minus_x, wide, 6, 3, coarse_grid, residual_tol=1e-2).diameter_c1
    assert d_wide > d_narrow


def test_funnel_needs_growth_condition(coarse_grid, closed_minus_x):
    """Test refusal without growth metadata."""
    with pytest.raises(ConditionError):
        sample_funnel(closed_minus_x, RightHandSide.box(zero_field, 0.3), 2, 0, coarse_grid)


def test_low_confidence_flag():
    """Test fewer than half converged members."""
    assert FunnelBundle(seed=0, members=5).low_confidence
    assert not FunnelBundle(seed=0, members=0).low_confidence


def test_bundle_export(tmp_path, coarse_grid, closed_minus_x, box_rhs):
    """Test one CSV per member plus a manifest."""
    bundle = sample_funnel(closed_minus_x, box_rhs, 3, 0, coarse_grid, residual_tol=1e-2)
    paths = bundle.export(str(tmp_path / "bundle"))
    assert sorted(os.listdir(tmp_path / "bundle")) == [
        "manifest.json", "member_0000.csv", "member_0001.csv", "member_0002.csv",
    ]
    assert paths[-1].endswith("manifest.json")
    manifest = json.loads((tmp_path / "bundle" / "manifest.json").read_text())
    assert manifest["converged_count"] == 3
    assert manifest["member_seeds"] == [0, 1, 2]
    assert manifest["bound_R"] == pytest.approx(bundle.bound_R)
    header = (tmp_path / "bundle" / "member_0000.csv").read_text().splitlines()[0]
    assert header == "t,x_1,dx_1,w_1"


def test_sixty_four_members_at_two_radii(coarse_grid, closed_minus_x):
    """Test M = 64 for r in {0.15, 0.3}: members inside the bounds and the diameter grows with r."""
    norms = kernel_norms(closed_minus_x, coarse_grid)
    diameters = []
    for r in (0.15, 0.3):
        rhs = RightHandSide.box(zero_field, r, c=r, m=0.0, mu=0.0, alpha=r)
        bundle = sample_funnel(closed_minus_x, rhs, 64, 21, coarse_grid, residual_tol=1e-2)
        bounds = apriori_bounds(norms, rhs, coarse_grid)
        assert bundle.converged_count == 64
        assert bundle.within_bounds
        assert bounds.sup_norm_bound == pytest.approx(1.00066 * r, rel=1e-3)
        for sol in bundle.solutions:
            assert sol.x.sup() <= bounds.sup_norm_bound * 1.001
            assert sol.c1_norm() <= bounds.c1_bound * 1.001
        diameters.append(bundle.diameter_c1)
    assert diameters[0] <= diameters[1] + 1e-9
    assert diameters[0] == pytest.approx(diameters[1] / 2, rel=1e-6)
