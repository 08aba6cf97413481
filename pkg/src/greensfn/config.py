"""Run settings, read from the environment (and ``.env``) with CLI overrides."""
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from greensfn.utils.errors import ConfigurationError

ENV_KEYS = {
    "grid": "GREENSFN_GRID",
    "tol": "GREENSFN_TOL",
    "max_iter": "GREENSFN_MAX_ITER",
    "seed": "GREENSFN_SEED",
    "log_level": "GREENSFN_LOG_LEVEL",
    "log_dir": "LOG_DIR",
}


class Settings(BaseModel):
    """Defaults shared by the solvers and the command line."""
    grid: int = Field(default=512, ge=4, le=1 << 16, description="Subinterval count of the uniform grid")
    tol: float = Field(default=1e-10, gt=0.0, le=1.0, description="Picard stopping tolerance on L1 increments")
    max_iter: int = Field(default=500, ge=1, le=1_000_000, description="Picard iteration budget")
    seed: int = Field(default=0, ge=0, lt=1 << 64, description="Seed for random starts and selections")
    log_level: str = Field(default="WARNING", description="Console log level")
    log_dir: Optional[str] = Field(default=None, description="Directory for rotating JSON log files")

    @field_validator("grid")
    @classmethod
    def validate_grid(cls, v: int) -> int:
        """Simpson quadrature needs an even subinterval count."""
        if v % 2:
            raise ValueError("grid must be even")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        v = v.upper()
        if v not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {v}")
        return v

    @classmethod
    def from_env(cls, overrides: Optional[Dict[str, Any]] = None) -> "Settings":
        """Build settings from ``.env``/environment, then apply non-None overrides."""
        load_dotenv()
        values: Dict[str, Any] = {}
        for field, key in ENV_KEYS.items():
            raw = os.getenv(key)
            if raw not in (None, ""):
                values[field] = raw
        for field, value in (overrides or {}).items():
            if value is not None:
                values[field] = value
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid settings: {e}") from e
