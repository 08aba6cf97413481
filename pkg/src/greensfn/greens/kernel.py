"""Green's kernels: numerically assembled and closed-form, with their discretizations."""
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from greensfn.core.grid import Grid, second_derivative
from greensfn.greens.fundamental import (
    FundamentalSystem,
    fundamental_system,
    require_compatible,
)
from greensfn.models.coefficients import BoundaryConditions, CoefficientSet
from greensfn.models.reports import KernelDiagnostics
from greensfn.utils.errors import ConfigurationError
from greensfn.utils.logger import setup_logger
from greensfn.utils.metrics import Timer, metrics

logger = setup_logger(__name__)

BranchFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class KernelMatrices:
    """Branch values on the node lattice and the branch-split quadrature weights.

    ``lower``/``upper`` hold the analytic extensions of both branches over the
    whole lattice; ``wl``/``wu`` restrict each row to [0, t_i] and [t_i, 1].
    """
    grid: Grid
    lower: np.ndarray
    upper: np.ndarray
    lower_dt: np.ndarray
    upper_dt: np.ndarray
    wl: np.ndarray
    wu: np.ndarray

    @property
    def operator(self) -> np.ndarray:
        return self.wl * self.lower + self.wu * self.upper

    @property
    def derivative(self) -> np.ndarray:
        return self.wl * self.lower_dt + self.wu * self.upper_dt

    @property
    def abs_operator(self) -> np.ndarray:
        return self.wl * np.abs(self.lower) + self.wu * np.abs(self.upper)

    @property
    def lattice(self) -> np.ndarray:
        """G(t_i, s_j) with the diagonal taken from the lower branch."""
        i, j = np.indices(self.lower.shape)
        return np.where(j <= i, self.lower, self.upper)


class GreensKernel(ABC):
    """Scalar kernel G(t, s) of L x = u with homogeneous boundary conditions.

    Branch evaluators broadcast over ``t`` and ``s`` and may be evaluated off
    their own triangle (they are smooth extensions). On the diagonal both
    branches agree; dG/dt is only ever reported as one-sided limits there.
    """

    representation: str = "numeric"

    def __init__(self, coeffs: CoefficientSet, bc: BoundaryConditions):
        self.coeffs = coeffs
        self.bc = bc
        self._cache: Dict[int, KernelMatrices] = {}
        self._lock = threading.Lock()

    @abstractmethod
    def lower(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Branch valid for s <= t."""

    @abstractmethod
    def upper(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        """Branch valid for t <= s."""

    @abstractmethod
    def lower_dt(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def upper_dt(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        pass

    def evaluate(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        t, s = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(s, dtype=float))
        return np.where(s <= t, self.lower(t, s), self.upper(t, s))

    def evaluate_dt(self, t: np.ndarray, s: np.ndarray, side: str = "above") -> np.ndarray:
        """dG/dt; on t = s return the limit from ``side`` ('above' is t -> s+)."""
        t, s = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(s, dtype=float))
        use_lower = (s < t) | ((s == t) & (side == "above"))
        return np.where(use_lower, self.lower_dt(t, s), self.upper_dt(t, s))

    def matrices(self, grid: Grid) -> KernelMatrices:
        """Lattice values and branch weights on ``grid``, built once per grid."""
        cached = self._cache.get(grid.n)
        if cached is not None:
            return cached
        with self._lock:
            if grid.n not in self._cache:
                with Timer("kernel_assembly"):
                    t = grid.nodes[:, None]
                    s = grid.nodes[None, :]
                    wl, wu = grid.branch_weights
                    self._cache[grid.n] = KernelMatrices(
                        grid=grid,
                        lower=np.asarray(self.lower(t, s), dtype=float),
                        upper=np.asarray(self.upper(t, s), dtype=float),
                        lower_dt=np.asarray(self.lower_dt(t, s), dtype=float),
                        upper_dt=np.asarray(self.upper_dt(t, s), dtype=float),
                        wl=wl,
                        wu=wu,
                    )
                metrics.increment("kernel_discretizations")
        return self._cache[grid.n]

    def operator_matrix(self, grid: Grid) -> np.ndarray:
        return self.matrices(grid).operator

    def derivative_matrix(self, grid: Grid) -> np.ndarray:
        return self.matrices(grid).derivative

    def dense_snapshot(self, grid: Grid) -> np.ndarray:
        return self.matrices(grid).lattice

    def write_kernel_csv(self, path: str, grid: Grid) -> str:
        from greensfn.analysis.export import write_matrix_csv

        return write_matrix_csv(path, grid.nodes, self.dense_snapshot(grid))

    def sign(self, grid: Grid, tol: float = 1e-12) -> int:
        """-1 or +1 when G keeps one sign on the lattice, 0 otherwise."""
        g = self.dense_snapshot(grid)
        if np.all(g <= tol):
            return -1
        if np.all(g >= -tol):
            return 1
        return 0

    def is_sign_definite(self, grid: Grid) -> bool:
        return self.sign(grid) != 0

    @property
    def is_periodic(self) -> bool:
        return np.allclose(self.bc.block, BoundaryConditions.periodic().block)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(representation={self.representation!r}, bc={self.bc.name!r})"


class NumericKernel(GreensKernel):
    """G(t, s) = K(t, s)[s <= t] + c1(s) u1(t) + c2(s) u2(t) from a sampled fundamental system.

    u1, u2 and their derivatives are interpolated with cubic Hermite splines, the
    second derivatives coming from the ODE itself, so the kernel can be evaluated
    at any (t, s) and is exact at the construction nodes.
    """

    representation = "numeric"

    def __init__(self, coeffs: CoefficientSet, bc: BoundaryConditions, fs: FundamentalSystem):
        super().__init__(coeffs, bc)
        self.fundamental = fs
        t = fs.grid.nodes
        a2, a1, a0 = coeffs.evaluate(t)
        dd1 = -(a1 * fs.du1 + a0 * fs.u1) / a2
        dd2 = -(a1 * fs.du2 + a0 * fs.u2) / a2
        self._u1 = CubicHermiteSpline(t, fs.u1, fs.du1)
        self._u2 = CubicHermiteSpline(t, fs.u2, fs.du2)
        self._du1 = CubicHermiteSpline(t, fs.du1, dd1)
        self._du2 = CubicHermiteSpline(t, fs.du2, dd2)
        self.boundary_matrix = fs.boundary_matrix(bc)
        self.determinant = float(np.linalg.det(self.boundary_matrix))
        self._end = np.array([fs.u1[-1], fs.du1[-1], fs.u2[-1], fs.du2[-1]])

    def _t_factors(self, t: np.ndarray):
        return self._u1(t), self._u2(t), self._du1(t), self._du2(t)

    def _s_factors(self, s: np.ndarray):
        """(p1, p2, c1, c2) with K(t, s) = p1(s) u2(t) - p2(s) u1(t)."""
        s = np.asarray(s, dtype=float)
        u1, u2, du1, du2 = self._t_factors(s)
        a2 = np.broadcast_to(np.asarray(self.coeffs.a2(s), dtype=float), s.shape)
        scale = a2 * (u1 * du2 - u2 * du1)
        p1, p2 = u1 / scale, u2 / scale
        e_u1, e_du1, e_u2, e_du2 = self._end
        k1 = p1 * e_u2 - p2 * e_u1
        k1_dt = p1 * e_du2 - p2 * e_du1
        # B_i applied to K(., s)[s <= .]: only the t = 1 terms survive
        b = self.bc.block
        r1 = -(b[0, 2] * k1 + b[0, 3] * k1_dt)
        r2 = -(b[1, 2] * k1 + b[1, 3] * k1_dt)
        m = self.boundary_matrix
        det = self.determinant
        c1 = (m[1, 1] * r1 - m[0, 1] * r2) / det
        c2 = (-m[1, 0] * r1 + m[0, 0] * r2) / det
        return p1, p2, c1, c2

    def upper(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        u1, u2, _, _ = self._t_factors(t)
        _, _, c1, c2 = self._s_factors(s)
        return c1 * u1 + c2 * u2

    def lower(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        u1, u2, _, _ = self._t_factors(t)
        p1, p2, c1, c2 = self._s_factors(s)
        return (p1 + c2) * u2 + (c1 - p2) * u1

    def upper_dt(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        _, _, du1, du2 = self._t_factors(t)
        _, _, c1, c2 = self._s_factors(s)
        return c1 * du1 + c2 * du2

    def lower_dt(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        _, _, du1, du2 = self._t_factors(t)
        p1, p2, c1, c2 = self._s_factors(s)
        return (p1 + c2) * du2 + (c1 - p2) * du1


class ClosedFormKernel(GreensKernel):
    """Kernel given by explicit branch formulas."""

    def __init__(
        self,
        representation: str,
        coeffs: CoefficientSet,
        bc: BoundaryConditions,
        lower: BranchFn,
        upper: BranchFn,
        lower_dt: BranchFn,
        upper_dt: BranchFn,
    ):
        super().__init__(coeffs, bc)
        self.representation = representation
        self._branches = (lower, upper, lower_dt, upper_dt)

    def lower(self, t, s):
        return self._branches[0](np.asarray(t, dtype=float), np.asarray(s, dtype=float))

    def upper(self, t, s):
        return self._branches[1](np.asarray(t, dtype=float), np.asarray(s, dtype=float))

    def lower_dt(self, t, s):
        return self._branches[2](np.asarray(t, dtype=float), np.asarray(s, dtype=float))

    def upper_dt(self, t, s):
        return self._branches[3](np.asarray(t, dtype=float), np.asarray(s, dtype=float))


def build_greens(coeffs: CoefficientSet, bc: BoundaryConditions, grid: Grid) -> NumericKernel:
    """Assemble G by variation of parameters plus a 2x2 boundary correction.

    Raises:
        IncompatibleProblemError: |det [B_i u_j]| < 1e-8.
    """
    with Timer("build_greens"):
        fs = fundamental_system(coeffs, grid)
        det = float(np.linalg.det(fs.boundary_matrix(bc)))
        require_compatible(det)
        kernel = NumericKernel(coeffs, bc, fs)
    logger.info("Built Green's kernel", extra={"determinant": det, "n": grid.n, "bc": bc.name})
    return kernel


def _periodic_xpp_minus_x() -> ClosedFormKernel:
    e = np.e
    a, b = e / (1.0 - e), 1.0 / (1.0 - e)

    def lower(t, s):
        return 0.5 * (a * np.exp(s - t) + b * np.exp(t - s))

    def upper(t, s):
        return 0.5 * (b * np.exp(s - t) + a * np.exp(t - s))

    def lower_dt(t, s):
        return 0.5 * (-a * np.exp(s - t) + b * np.exp(t - s))

    def upper_dt(t, s):
        return 0.5 * (-b * np.exp(s - t) + a * np.exp(t - s))

    return ClosedFormKernel(
        "closed_form_periodic_xpp_minus_x",
        CoefficientSet.constant(1.0, 0.0, -1.0),
        BoundaryConditions.periodic(),
        lower, upper, lower_dt, upper_dt,
    )


def _periodic_xpp_xp_x() -> ClosedFormKernel:
    l1 = 0.5 * (1.0 + np.sqrt(5.0))
    l2 = 0.5 * (1.0 - np.sqrt(5.0))
    k = 1.0 / (l2 - l1)
    q1 = 1.0 / (1.0 - np.exp(l1))
    q2 = 1.0 / (1.0 - np.exp(l2))
    e1, e2 = np.exp(l1), np.exp(l2)

    def lower(t, s):
        return k * (-q1 * np.exp(l1 * (t - s)) + q2 * np.exp(l2 * (t - s)))

    def upper(t, s):
        return k * (-q1 * e1 * np.exp(l1 * (t - s)) + q2 * e2 * np.exp(l2 * (t - s)))

    def lower_dt(t, s):
        return k * (-q1 * l1 * np.exp(l1 * (t - s)) + q2 * l2 * np.exp(l2 * (t - s)))

    def upper_dt(t, s):
        return k * (-q1 * e1 * l1 * np.exp(l1 * (t - s)) + q2 * e2 * l2 * np.exp(l2 * (t - s)))

    return ClosedFormKernel(
        "closed_form_xpp_xp_x",
        CoefficientSet.constant(1.0, -1.0, -1.0),
        BoundaryConditions.periodic(),
        lower, upper, lower_dt, upper_dt,
    )


CLOSED_FORMS = {
    "periodic_xpp_minus_x": _periodic_xpp_minus_x,
    "periodic_xpp_xp_x": _periodic_xpp_xp_x,
}


def closed_form_kernel(example_id: str) -> ClosedFormKernel:
    """Exact kernel of x'' - x (periodic_xpp_minus_x) or x'' - x' - x (periodic_xpp_xp_x), periodic."""
    try:
        factory = CLOSED_FORMS[example_id]
    except KeyError:
        raise ConfigurationError(
            f"unknown closed-form kernel {example_id!r}; expected one of {sorted(CLOSED_FORMS)}"
        ) from None
    return factory()


def kernel_diagnostics(kernel: GreensKernel, grid: Grid, band: int = 2) -> KernelDiagnostics:
    """Defects of the discretized kernel against continuity, jump, ODE and boundary identities."""
    km = kernel.matrices(grid)
    n = grid.n
    idx = np.arange(n + 1)
    a2, a1, a0 = kernel.coeffs.evaluate(grid.nodes)

    continuity = float(np.max(np.abs(km.lower[idx, idx] - km.upper[idx, idx])))
    interior = idx[1:-1]
    jump = float(np.max(np.abs(
        km.lower_dt[interior, interior] - km.upper_dt[interior, interior] - 1.0 / a2[interior]
    )))

    rows = idx[:, None]
    cols = idx[None, :]
    residual = 0.0
    for values, dt, mask in (
        (km.lower, km.lower_dt, cols < rows - band),
        (km.upper, km.upper_dt, cols > rows + band),
    ):
        dtt = second_derivative(values, grid)
        r = a2[:, None] * dtt + a1[:, None] * dt + a0[:, None] * values
        keep = mask.copy()
        keep[0, :] = keep[-1, :] = False
        if np.any(keep):
            residual = max(residual, float(np.max(np.abs(r[keep]))))

    b = kernel.bc.apply(
        km.upper[0, interior], km.upper_dt[0, interior], km.lower[-1, interior], km.lower_dt[-1, interior]
    )
    bc_residual = float(np.max(np.abs(b)))
    return KernelDiagnostics(continuity=continuity, jump=jump, ode_residual=residual, bc_residual=bc_residual)
