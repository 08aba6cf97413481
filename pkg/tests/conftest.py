"""Global test fixtures for greensfn."""
import pytest

from greensfn.core.grid import Grid
from greensfn.greens.kernel import build_greens, closed_form_kernel
from greensfn.models.coefficients import BoundaryConditions, CoefficientSet
from greensfn.utils.metrics import MetricsManager


@pytest.fixture(autouse=True)
def fresh_metrics():
    """Each test starts from an empty metrics registry."""
    MetricsManager().clear()
    yield


@pytest.fixture(scope="session")
def grid() -> Grid:
    return Grid(512)


@pytest.fixture(scope="session")
def coarse_grid() -> Grid:
    return Grid(128)


@pytest.fixture(scope="session")
def periodic() -> BoundaryConditions:
    return BoundaryConditions.periodic()


@pytest.fixture(scope="session")
def xpp_minus_x(grid):
    """Numeric periodic kernel of x'' - x."""
    return build_greens(CoefficientSet.constant(1.0, 0.0, -1.0), BoundaryConditions.periodic(), grid)


@pytest.fixture(scope="session")
def xpp_xp_x(grid):
    """Numeric periodic kernel of x'' - x' - x."""
    return build_greens(CoefficientSet.constant(1.0, -1.0, -1.0), BoundaryConditions.periodic(), grid)


@pytest.fixture(scope="session")
def xpp_minus_4x(coarse_grid):
    """Numeric periodic kernel of x'' - 4x (sup|G| ~ 0.328)."""
    return build_greens(CoefficientSet.constant(1.0, 0.0, -4.0), BoundaryConditions.periodic(), coarse_grid)


@pytest.fixture(scope="session")
def closed_minus_x():
    return closed_form_kernel("periodic_xpp_minus_x")


@pytest.fixture(scope="session")
def closed_xp_x():
    return closed_form_kernel("periodic_xpp_xp_x")
