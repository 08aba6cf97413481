"""Tests for run settings."""
import pytest

from greensfn.config import ENV_KEYS, Settings
from greensfn.utils.errors import ConfigurationError


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """No GREENSFN_* variables and no .env file in the working directory."""
    for key in ENV_KEYS.values():
        monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)
    return monkeypatch


def test_defaults(clean_env):
    """Test the built-in defaults."""
    settings = Settings.from_env()
    assert settings.grid == 512
    assert settings.tol == 1e-10
    assert settings.max_iter == 500
    assert settings.seed == 0
    assert settings.log_level == "WARNING"
    assert settings.log_dir is None


def test_environment_values(clean_env):
    """Test values are read and coerced from the environment."""
    clean_env.setenv("GREENSFN_GRID", "64")
    clean_env.setenv("GREENSFN_TOL", "1e-6")
    clean_env.setenv("GREENSFN_LOG_LEVEL", "debug")
    settings = Settings.from_env()
    assert settings.grid == 64
    assert settings.tol == 1e-6
    assert settings.log_level == "DEBUG"


def test_overrides_win(clean_env):
    """Test non-None overrides replace environment values."""
    clean_env.setenv("GREENSFN_GRID", "64")
    settings = Settings.from_env({"grid": 128, "seed": None})
    assert settings.grid == 128
    assert settings.seed == 0


@pytest.mark.parametrize(
    "overrides",
    [{"grid": 33}, {"grid": 2}, {"tol": 0.0}, {"max_iter": 0}, {"log_level": "LOUD"}],
)
def test_invalid_settings(clean_env, overrides):
    """Test invalid values raise ConfigurationError."""
    with pytest.raises(ConfigurationError):
        Settings.from_env(overrides)


def test_invalid_environment_value(clean_env):
    """Test a malformed environment value is reported."""
    clean_env.setenv("GREENSFN_GRID", "many")
    with pytest.raises(ConfigurationError, match="Invalid settings"):
        Settings.from_env()
