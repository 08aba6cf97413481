"""Coefficient and boundary-condition models for L x = a2 x'' + a1 x' + a0 x."""
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from greensfn.core.grid import Grid, SampledFunction
from greensfn.core.ivp import SINGULARITY_TOL
from greensfn.utils.errors import CoefficientSingularityError, ConfigurationError

ScalarFn = Callable[[np.ndarray], np.ndarray]


def constant(value: float) -> ScalarFn:
    """A vectorized constant function of t."""
    v = float(value)
    return lambda t: np.full(np.shape(t), v)


class CoefficientSet(BaseModel):
    """Scalar coefficients a2, a1, a0 of the differential operator, as callables of t."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a2: ScalarFn = Field(..., description="Leading coefficient, nonzero on [0, 1]")
    a1: ScalarFn = Field(..., description="First-order coefficient")
    a0: ScalarFn = Field(..., description="Zeroth-order coefficient")
    monic: bool = Field(default=False, description="Declares a2 == 1")
    labels: Tuple[str, str, str] = Field(default=("a2", "a1", "a0"), description="Printable expressions")

    @classmethod
    def constant(cls, a2: float = 1.0, a1: float = 0.0, a0: float = 0.0) -> "CoefficientSet":
        return cls(
            a2=constant(a2),
            a1=constant(a1),
            a0=constant(a0),
            monic=a2 == 1.0,
            labels=(repr(a2), repr(a1), repr(a0)),
        )

    def evaluate(self, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(a2, a1, a0) sampled at ``t``, broadcast to the shape of ``t``."""
        t = np.asarray(t, dtype=float)
        return tuple(
            np.broadcast_to(np.asarray(fn(t), dtype=float), t.shape).copy()
            for fn in (self.a2, self.a1, self.a0)
        )

    def check(self, grid: Grid) -> None:
        """Raise when a2 vanishes on a node or a declared monic a2 differs from 1."""
        a2 = self.evaluate(grid.nodes)[0]
        bad = np.flatnonzero(np.abs(a2) < SINGULARITY_TOL)
        if bad.size:
            t = float(grid.nodes[bad[0]])
            raise CoefficientSingularityError(f"a2 vanishes at t={t:.6g}", t=t)
        if self.monic and not np.allclose(a2, 1.0, rtol=0.0, atol=1e-14):
            raise ConfigurationError("coefficients declared monic but a2 != 1 on the grid")

    def apply(self, x: np.ndarray, dx: np.ndarray, ddx: np.ndarray, t: np.ndarray) -> np.ndarray:
        """L x from node values of x, x', x'' (shape (k, N) or (k,))."""
        a2, a1, a0 = self.evaluate(t)
        if np.ndim(x) == 2:
            a2, a1, a0 = a2[:, None], a1[:, None], a0[:, None]
        return a2 * ddx + a1 * dx + a0 * x


BoundaryRow = Tuple[float, float, float, float]


class BoundaryConditions(BaseModel):
    """Rows (b_i1, b_i2, c_i1, c_i2) of B_i x = b_i1 x(0) + b_i2 x'(0) + c_i1 x(1) + c_i2 x'(1) = d_i."""
    model_config = ConfigDict(frozen=True)

    rows: Tuple[BoundaryRow, BoundaryRow] = Field(..., description="The 2x4 coefficient block")
    d: Optional[Tuple[Tuple[float, ...], Tuple[float, ...]]] = Field(
        default=None, description="Targets d1, d2 in R^N; None means homogeneous"
    )
    name: str = Field(default="custom", description="Preset name or 'custom'")

    @field_validator("rows")
    @classmethod
    def validate_rank(cls, v: Tuple[BoundaryRow, BoundaryRow]) -> Tuple[BoundaryRow, BoundaryRow]:
        """The two boundary functionals must be independent."""
        block = np.asarray(v, dtype=float)
        if not np.all(np.isfinite(block)):
            raise ValueError("boundary rows must be finite")
        if np.linalg.matrix_rank(block) < 2:
            raise ValueError("boundary rows are linearly dependent (rank < 2)")
        return v

    @model_validator(mode="after")
    def validate_targets(self) -> "BoundaryConditions":
        if self.d is not None and len(self.d[0]) != len(self.d[1]):
            raise ValueError("targets d1 and d2 must have the same dimension")
        return self

    @classmethod
    def periodic(cls) -> "BoundaryConditions":
        return cls(rows=((1.0, 0.0, -1.0, 0.0), (0.0, 1.0, 0.0, -1.0)), name="periodic")

    @classmethod
    def dirichlet(cls, d1: Optional[List[float]] = None, d2: Optional[List[float]] = None) -> "BoundaryConditions":
        return cls(
            rows=((1.0, 0.0, 0.0, 0.0), (0.0, 0.0, 1.0, 0.0)),
            d=_targets(d1, d2),
            name="dirichlet",
        )

    @classmethod
    def neumann(cls, d1: Optional[List[float]] = None, d2: Optional[List[float]] = None) -> "BoundaryConditions":
        return cls(
            rows=((0.0, 1.0, 0.0, 0.0), (0.0, 0.0, 0.0, 1.0)),
            d=_targets(d1, d2),
            name="neumann",
        )

    @property
    def block(self) -> np.ndarray:
        return np.asarray(self.rows, dtype=float)

    @property
    def homogeneous(self) -> bool:
        return self.d is None or not np.any(np.asarray(self.d, dtype=float))

    def targets(self, dim: int) -> np.ndarray:
        """(2, dim) array of d1, d2; zeros when homogeneous."""
        if self.d is None:
            return np.zeros((2, dim))
        d = np.asarray(self.d, dtype=float)
        if d.shape[1] != dim:
            raise ConfigurationError(f"boundary targets have dimension {d.shape[1]}, expected {dim}")
        return d

    def apply(self, x0: np.ndarray, dx0: np.ndarray, x1: np.ndarray, dx1: np.ndarray) -> np.ndarray:
        """(B_1 x, B_2 x) from endpoint values; result has shape (2,) + x0.shape."""
        ends = np.stack([np.asarray(v, dtype=float) for v in (x0, dx0, x1, dx1)])
        return np.tensordot(self.block, ends, axes=1)

    def apply_to(self, x: SampledFunction, dx: SampledFunction) -> np.ndarray:
        return self.apply(x.values[0], dx.values[0], x.values[-1], dx.values[-1])


def _targets(d1: Optional[List[float]], d2: Optional[List[float]]) -> Optional[Tuple[Tuple[float, ...], Tuple[float, ...]]]:
    if d1 is None and d2 is None:
        return None
    d1 = list(d1 if d1 is not None else [0.0] * len(d2))
    d2 = list(d2 if d2 is not None else [0.0] * len(d1))
    return tuple(float(v) for v in d1), tuple(float(v) for v in d2)
