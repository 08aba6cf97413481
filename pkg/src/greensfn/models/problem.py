"""Problem files as parsed text: expression strings per section, compiled later."""
from typing import Dict, Optional

from pydantic import BaseModel, Field, field_validator


class ProblemSpec(BaseModel):
    """One boundary value problem as written in a problem file.

    Values stay strings here; :func:`greensfn.cli.builder.build_problem` compiles
    the expressions and validates the resulting models.
    """
    name: str = Field(default="problem", description="Preset or file name")
    coefficients: Dict[str, str] = Field(
        default_factory=lambda: {"a2": "1", "a1": "0", "a0": "0"},
        description="Expressions in t for a2, a1, a0",
    )
    boundary: Dict[str, str] = Field(
        default_factory=lambda: {"preset": "periodic"},
        description="preset, or row1/row2 as 'b1, b2, c1, c2'; optional d1/d2",
    )
    rhs: Dict[str, str] = Field(
        default_factory=lambda: {"kind": "single", "dim": "1", "f0": "0"},
        description="kind, dim, f0 (';'-separated components), rho and metadata c, m, mu, alpha, eta",
    )
    grid: Optional[int] = Field(default=None, description="Grid subinterval count")
    options: Dict[str, str] = Field(default_factory=dict, description="Free-form command options")

    @field_validator("coefficients", "boundary", "rhs", "options", mode="before")
    @classmethod
    def stringify(cls, v: Dict) -> Dict[str, str]:
        """Accept numbers and booleans from JSON problem files."""
        if not isinstance(v, dict):
            raise ValueError("section must be a mapping")
        out = {}
        for key, value in v.items():
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif isinstance(value, (list, tuple)):
                value = ", ".join(str(x) for x in value)
            out[str(key).lower()] = str(value)
        return out

    @field_validator("grid")
    @classmethod
    def validate_grid(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and (v < 4 or v % 2):
            raise ValueError("grid must be an even integer >= 4")
        return v
