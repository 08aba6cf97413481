"""Tests for the F + x/n approximation scheme."""
import numpy as np
import pytest

from greensfn.core.grid import SampledFunction
from greensfn.funnel import (
    accretivity_probe,
    approximation_scheme,
    dependence_ratio,
    perturb,
    solve_perturbed,
    uniform_radius,
)
from greensfn.greens import kernel_norms
from greensfn.models.rhs import RightHandSide
from greensfn.utils.errors import ConditionError, ConfigurationError


@pytest.fixture
def cubic():
    return RightHandSide.single(lambda t, x: x ** 3, accretive=True, label="x^3")


@pytest.fixture
def arctan():
    return RightHandSide.single(lambda t, x: np.arctan(x), c=np.pi / 2, m=0.0, mu=1.0, accretive=True)


@pytest.fixture
def norms(coarse_grid, xpp_minus_4x):
    return kernel_norms(xpp_minus_4x, coarse_grid)


def test_perturb_shifts_metadata(norms, coarse_grid, arctan):
    """Test m + 1/n, mu + 1/n and the strengthened accretivity."""
    pp = perturb(arctan, 8, norms, coarse_grid)
    assert pp.rhs.growth_m == pytest.approx(0.125)
    assert pp.rhs.mu(np.array([0.3]))[0] == pytest.approx(1.125)
    assert pp.rhs.accretive_shift == pytest.approx(0.125)
    assert accretivity_probe(pp.rhs, shift=1.0 / 8) >= -1e-10


def test_eps_n_scales_as_one_over_n(norms, coarse_grid, arctan):
    """Test eps_n = (sup|G| + sup||dG/dt(t,.)||_2) R / n."""
    radius = uniform_radius(norms, arctan, coarse_grid)
    assert radius is not None and radius > 0.0
    eps = [perturb(arctan, n, norms, coarse_grid).eps_n for n in (4, 8, 16)]
    assert eps[0] == pytest.approx((norms.sup_abs + norms.sup_l2_rows_dt) * radius / 4)
    assert eps[1] == pytest.approx(eps[0] / 2)
    assert eps[2] == pytest.approx(eps[0] / 4)


def test_perturb_without_growth_metadata(norms, coarse_grid, cubic):
    """Test that eps_n and R stay undefined without growth metadata."""
    pp = perturb(cubic, 10, norms, coarse_grid)
    assert pp.eps_n is None
    assert pp.radius is None
    assert uniform_radius(norms, cubic, coarse_grid) is None


def test_perturb_refusals(norms, coarse_grid, arctan, grid, closed_minus_x):
    """Test n = 0 and a failing perturbed-growth condition."""
    with pytest.raises(ConfigurationError):
        perturb(arctan, 0, norms, coarse_grid)
    with pytest.raises(ConditionError):
        perturb(arctan, 4, kernel_norms(closed_minus_x, grid), grid)


def test_cubic_uniqueness_spread(coarse_grid, xpp_minus_4x, norms, cubic):
    """Test ten random starts of x^3 + x/10 agree."""
    result = solve_perturbed(perturb(cubic, 10, norms, coarse_grid), xpp_minus_4x, coarse_grid, starts=10)
    assert result.converged_starts == 10
    assert result.diverged_starts == 0
    assert result.spread <= 1e-6
    assert result.solution.x.sup() <= 1e-6


def test_uniqueness_probe_refuses_unsuitable_rhs(coarse_grid, xpp_minus_4x, norms):
    """Test box-valued and non-accretive right-hand sides."""
    box = RightHandSide.box(lambda t, x: x, 0.1, accretive=True)
    with pytest.raises(ConditionError):
        solve_perturbed(perturb(box, 4, norms, coarse_grid), xpp_minus_4x, coarse_grid)
    plain = RightHandSide.single(lambda t, x: np.sin(x))
    with pytest.raises(ConditionError):
        solve_perturbed(perturb(plain, 4, norms, coarse_grid), xpp_minus_4x, coarse_grid)


def test_approximation_scheme_arctan(coarse_grid, xpp_minus_4x, arctan):
    """Test measured gap <= eps_n and unique perturbed solutions for n in {4, 8, 16}."""
    report = approximation_scheme(arctan, xpp_minus_4x, coarse_grid, [4, 8, 16], samples=5, starts=4)
    assert [e.n for e in report.entries] == [4, 8, 16]
    for entry in report.entries:
        assert entry.condition_a is True
        assert entry.measured_gap <= entry.eps_n
        assert entry.condition_b is True
        assert entry.spread <= 1e-6
    assert report.all_pass
    gaps = [e.measured_gap for e in report.entries]
    assert gaps[0] > gaps[1] > gaps[2]


def test_approximation_scheme_needs_accretive_rhs(coarse_grid, xpp_minus_4x):
    """Test the scheme refuses a non-accretive right-hand side."""
    with pytest.raises(ConditionError):
        approximation_scheme(RightHandSide.single(lambda t, x: -x), xpp_minus_4x, coarse_grid, [4])


def test_dependence_on_inhomogeneity(coarse_grid, xpp_minus_4x, norms, arctan):
    """Test the solution moves proportionally to a small lift h."""
    pp = perturb(arctan, 16, norms, coarse_grid)
    t = coarse_grid.nodes
    h = SampledFunction(coarse_grid, 1e-3 * np.cos(2 * np.pi * t))
    dh = SampledFunction(coarse_grid, -2e-3 * np.pi * np.sin(2 * np.pi * t))
    result = dependence_ratio(pp, xpp_minus_4x, coarse_grid, h, dh, starts=2)
    assert 0.0 < result["ratio"] < 2.0
    assert result["halving"] == pytest.approx(0.5, abs=0.05)


def test_cubic_on_periodic_unit_kernel(coarse_grid, closed_minus_x, cubic):
    """Test x^3 + x/10 with the x'' - x kernel: ten starts agree and h = 0.01 sin(2 pi t) moves x continuously."""
    norms = kernel_norms(closed_minus_x, coarse_grid)
    pp = perturb(cubic, 10, norms, coarse_grid)
    result = solve_perturbed(pp, closed_minus_x, coarse_grid, starts=10)
    assert result.converged_starts == 10
    assert result.spread <= 1e-6

    t = coarse_grid.nodes
    h = SampledFunction(coarse_grid, 0.01 * np.sin(2 * np.pi * t))
    dh = SampledFunction(coarse_grid, 0.02 * np.pi * np.cos(2 * np.pi * t))
    moved = dependence_ratio(pp, closed_minus_x, coarse_grid, h, dh, starts=2)
    assert 0.0 < moved["ratio"] < 2.0
    assert moved["halving"] == pytest.approx(0.5, abs=0.05)


@pytest.mark.parametrize("n", [4, 64])
def test_zero_field_has_only_the_zero_solution(coarse_grid, closed_minus_x, n):
    """Test f0 = 0: every start ends at x = 0."""
    zero = RightHandSide.single(lambda t, x: np.zeros_like(x), accretive=True)
    pp = perturb(zero, n, kernel_norms(closed_minus_x, coarse_grid), coarse_grid)
    result = solve_perturbed(pp, closed_minus_x, coarse_grid, starts=4)
    assert result.converged_starts == 4
    assert result.spread <= 1e-8
    assert result.solution.x.sup() <= 1e-8


def test_scheme_with_twenty_samples(coarse_grid, xpp_minus_4x, arctan, cubic):
    """Test n in {4, 16, 64} on 20 samples: gap <= eps_n for arctan, unique solutions for both."""
    for rhs in (arctan, cubic):
        report = approximation_scheme(rhs, xpp_minus_4x, coarse_grid, [4, 16, 64], samples=20, starts=5)
        assert report.all_pass
        for entry in report.entries:
            assert entry.converged_starts == 5
            assert entry.spread <= 1e-6
            if rhs is arctan:
                assert entry.measured_gap <= entry.eps_n
            else:
                assert entry.eps_n is None and entry.condition_a is None
