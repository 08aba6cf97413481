"""Uniform grids on [0, 1], sampled functions, quadrature and norms."""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Tuple, Union

import numpy as np

from greensfn.utils.errors import GridError

# Adams-Moulton weights for one interval at the edge of four equispaced nodes
_EDGE_WEIGHTS = np.array([9.0, 19.0, -5.0, 1.0]) / 24.0


def simpson_weights(m: int, h: float) -> np.ndarray:
    """Composite Simpson weights for ``m`` (even) subintervals of width ``h``."""
    if m <= 0 or m % 2:
        raise GridError(f"Simpson rule needs an even positive subinterval count, got {m}")
    w = np.empty(m + 1)
    w[0] = w[-1] = 1.0
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


@dataclass(frozen=True)
class Grid:
    """Uniform partition t_i = i/n of [0, 1] with composite Simpson weights."""
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n <= 0:
            raise GridError(f"subinterval count must be a positive integer, got {self.n!r}")
        if self.n % 2:
            raise GridError(f"Simpson quadrature needs an even subinterval count, got {self.n}")
        if self.n < 4:
            raise GridError(f"branch-split quadrature needs at least 4 subintervals, got {self.n}")

    @property
    def h(self) -> float:
        return 1.0 / self.n

    @property
    def size(self) -> int:
        return self.n + 1

    @cached_property
    def nodes(self) -> np.ndarray:
        t = np.arange(self.n + 1, dtype=float) / self.n
        t.setflags(write=False)
        return t

    @cached_property
    def weights(self) -> np.ndarray:
        w = simpson_weights(self.n, self.h)
        w.setflags(write=False)
        return w

    def segment_weights(self, start: int, stop: int) -> np.ndarray:
        """Cubic-exact weights for the integral over [t_start, t_stop].

        Even segments use composite Simpson, odd segments close with a 3/8 panel,
        and a single interval borrows the two nearest outside nodes. The returned
        vector spans the whole grid so it can be dotted with node samples.
        """
        if not 0 <= start <= stop <= self.n:
            raise GridError(f"segment [{start}, {stop}] outside grid with n={self.n}")
        w = np.zeros(self.n + 1)
        m = stop - start
        h = self.h
        if m == 0:
            return w
        if m == 1:
            if start + 3 <= self.n:
                w[start:start + 4] += _EDGE_WEIGHTS * h
            else:
                w[stop - 3:stop + 1] += _EDGE_WEIGHTS[::-1] * h
            return w
        if m % 2 == 0:
            w[start:stop + 1] += simpson_weights(m, h)
            return w
        if m > 3:
            w[start:stop - 2] += simpson_weights(m - 3, h)
        w[stop - 3:stop + 1] += np.array([1.0, 3.0, 3.0, 1.0]) * (3.0 * h / 8.0)
        return w

    @cached_property
    def branch_weights(self) -> Tuple[np.ndarray, np.ndarray]:
        """Row-wise weights splitting [0, 1] at each node: (lower on [0, t_i], upper on [t_i, 1])."""
        lower = np.vstack([self.segment_weights(0, i) for i in range(self.n + 1)])
        upper = np.vstack([self.segment_weights(i, self.n) for i in range(self.n + 1)])
        lower.setflags(write=False)
        upper.setflags(write=False)
        return lower, upper

    def check_same(self, other: "Grid") -> None:
        if self.n != other.n:
            raise GridError(f"grid mismatch: n={self.n} vs n={other.n}")


@dataclass(frozen=True)
class SampledFunction:
    """Node values of a map I -> R^N; ``values`` has shape (n+1, N)."""
    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] != self.grid.size:
            raise GridError(
                f"expected {self.grid.size} node values, got array of shape {values.shape}"
            )
        if values.shape[1] < 1:
            raise GridError("sampled function needs dimension >= 1")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, grid: Grid, fn: Callable[[np.ndarray], np.ndarray]) -> "SampledFunction":
        return cls(grid, np.asarray(fn(grid.nodes), dtype=float))

    @classmethod
    def zeros(cls, grid: Grid, dim: int = 1) -> "SampledFunction":
        return cls(grid, np.zeros((grid.size, dim)))

    @property
    def dim(self) -> int:
        return int(self.values.shape[1])

    @property
    def scalar(self) -> np.ndarray:
        """The values of a scalar function as a flat array."""
        if self.dim != 1:
            raise GridError(f"expected a scalar function, got dimension {self.dim}")
        return self.values[:, 0]

    def pointwise_norm(self) -> np.ndarray:
        """Euclidean norm of the vector at each node."""
        return np.linalg.norm(self.values, axis=1)

    def sup(self) -> float:
        return float(self.pointwise_norm().max())

    def _coerce(self, other: Union["SampledFunction", float, np.ndarray]) -> np.ndarray:
        if isinstance(other, SampledFunction):
            self.grid.check_same(other.grid)
            return other.values
        return np.asarray(other, dtype=float)

    def __add__(self, other: Union["SampledFunction", float, np.ndarray]) -> "SampledFunction":
        return SampledFunction(self.grid, self.values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Union["SampledFunction", float, np.ndarray]) -> "SampledFunction":
        return SampledFunction(self.grid, self.values - self._coerce(other))

    def __mul__(self, other: Union[float, np.ndarray]) -> "SampledFunction":
        return SampledFunction(self.grid, self.values * np.asarray(other, dtype=float))

    __rmul__ = __mul__

    def __neg__(self) -> "SampledFunction":
        return SampledFunction(self.grid, -self.values)


def quadrature(f: Union[SampledFunction, np.ndarray], grid: Union[Grid, None] = None) -> float:
    """Composite Simpson approximation of the integral over [0, 1] of a scalar function."""
    if isinstance(f, SampledFunction):
        return float(f.grid.weights @ f.scalar)
    if grid is None:
        raise GridError("a grid is required to integrate raw node values")
    values = np.asarray(f, dtype=float)
    if values.shape != (grid.size,):
        raise GridError(f"expected {grid.size} scalar node values, got shape {values.shape}")
    return float(grid.weights @ values)


def lp_norms(f: SampledFunction) -> Tuple[float, float, float]:
    """(||f||_1, ||f||_2, ||f||_sup) with the Euclidean norm taken pointwise."""
    pointwise = f.pointwise_norm()
    w = f.grid.weights
    l1 = float(w @ pointwise)
    l2 = float(np.sqrt(max(w @ pointwise ** 2, 0.0)))
    return l1, l2, float(pointwise.max())


def c1_norm(x: SampledFunction, dx: SampledFunction) -> float:
    """||x||_sup + ||x'||_sup."""
    return x.sup() + dx.sup()


def first_derivative(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Second-order finite differences along axis 0, one-sided at the endpoints."""
    y = np.asarray(values, dtype=float)
    h = grid.h
    d = np.empty_like(y)
    d[1:-1] = (y[2:] - y[:-2]) / (2.0 * h)
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h)
    d[-1] = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2.0 * h)
    return d


def second_derivative(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Central second differences along axis 0, four-point one-sided at the endpoints."""
    y = np.asarray(values, dtype=float)
    h2 = grid.h ** 2
    d = np.empty_like(y)
    d[1:-1] = (y[2:] - 2.0 * y[1:-1] + y[:-2]) / h2
    d[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) / h2
    d[-1] = (2.0 * y[-1] - 5.0 * y[-2] + 4.0 * y[-3] - y[-4]) / h2
    return d
