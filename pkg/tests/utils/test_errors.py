"""Tests for the error classes."""
import pytest

from greensfn.utils.errors import (
    CoefficientSingularityError,
    ConditionError,
    ConfigurationError,
    DegenerateWronskianError,
    DivergenceError,
    GreensFnError,
    GridError,
    IncompatibleProblemError,
    SpectralError,
)


def test_greensfn_error():
    """Test GreensFnError base class."""
    with pytest.raises(GreensFnError) as exc_info:
        raise GreensFnError("Test error")
    assert str(exc_info.value) == "Test error"
    assert isinstance(exc_info.value, Exception)


@pytest.mark.parametrize(
    "cls",
    [ConfigurationError, GridError, DegenerateWronskianError, SpectralError],
)
def test_plain_errors(cls):
    """Test the errors that only carry a message."""
    with pytest.raises(GreensFnError) as exc_info:
        raise cls("failed")
    assert str(exc_info.value) == "failed"
    assert isinstance(exc_info.value, cls)


def test_coefficient_singularity_error():
    """Test CoefficientSingularityError carries the offending point."""
    error = CoefficientSingularityError("a2 vanishes", t=0.5)
    assert error.t == 0.5
    assert CoefficientSingularityError("a2 vanishes").t is None


def test_incompatible_problem_error():
    """Test IncompatibleProblemError carries the determinant."""
    error = IncompatibleProblemError("singular", determinant=1e-14)
    assert error.determinant == 1e-14
    assert isinstance(error, GreensFnError)


def test_condition_error():
    """Test ConditionError carries the condition id."""
    error = ConditionError("growth fails", condition_id="growth")
    assert error.condition_id == "growth"
    assert ConditionError("fails").condition_id is None


def test_divergence_error():
    """Test DivergenceError carries the partial solution."""
    partial = object()
    error = DivergenceError("no convergence", solution=partial)
    assert error.solution is partial
    assert str(error) == "no convergence"
