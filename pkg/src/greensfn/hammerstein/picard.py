"""Picard iteration on selections, residual checks and the retraction x -> h + H(r(Lx))."""
from dataclasses import dataclass, field
from typing import List, Literal, Optional

import numpy as np

from greensfn.core.grid import SampledFunction, first_derivative, lp_norms, second_derivative
from greensfn.greens.kernel import GreensKernel
from greensfn.greens.norms import kernel_norms
from greensfn.hammerstein.conditions import contraction_constant
from greensfn.hammerstein.operators import Selection, apply_H, nemytskii
from greensfn.models.coefficients import BoundaryConditions, CoefficientSet
from greensfn.models.reports import ResidualReport
from greensfn.models.rhs import RightHandSide
from greensfn.utils.errors import DivergenceError
from greensfn.utils.logger import setup_logger
from greensfn.utils.metrics import Timer, metrics

logger = setup_logger(__name__)

# increments below this are rounding noise and excluded from ratio estimates
RATIO_FLOOR = 1e-12


@dataclass
class Solution:
    """x = h + H(w) together with the selection w, residuals and the increment history."""
    x: SampledFunction
    dx: SampledFunction
    w: SampledFunction
    residual_ode: float
    residual_bc: float
    iterations: int
    increments: List[float] = field(default_factory=list)
    converged: bool = True
    q: Optional[float] = None

    @property
    def guaranteed(self) -> bool:
        return self.q is not None and self.q < 1.0

    @property
    def ratios(self) -> List[float]:
        inc = self.increments
        return [inc[k + 1] / inc[k] for k in range(len(inc) - 1) if inc[k] > RATIO_FLOOR]

    @property
    def observed_ratio(self) -> Optional[float]:
        r = self.ratios
        return max(r) if r else None

    @property
    def remaining_bound(self) -> Optional[float]:
        """q/(1-q) times the last increment: distance of w to the fixed point when q < 1."""
        if not self.guaranteed or not self.increments:
            return None
        return self.q / (1.0 - self.q) * self.increments[-1]

    def c1_norm(self) -> float:
        return self.x.sup() + self.dx.sup()

    def summary(self) -> dict:
        l1, l2, sup = lp_norms(self.x)
        return {
            "c1_norm": self.c1_norm(),
            "converged": self.converged,
            "guaranteed": self.guaranteed,
            "increment_ratios": self.ratios,
            "increments": self.increments,
            "iterations": self.iterations,
            "l1_norm": l1,
            "l2_norm": l2,
            "observed_ratio": self.observed_ratio,
            "q": self.q,
            "remaining_bound": self.remaining_bound,
            "residual_bc": self.residual_bc,
            "residual_ode": self.residual_ode,
            "sup_norm": sup,
        }


def apply_L(coeffs: CoefficientSet, x: SampledFunction, dx: Optional[SampledFunction] = None) -> np.ndarray:
    """a2 x'' + a1 x' + a0 x with x'' (and x' unless given) from finite differences."""
    grid = x.grid
    d1 = dx.values if dx is not None else first_derivative(x.values, grid)
    d2 = second_derivative(x.values, grid)
    return coeffs.apply(x.values, d1, d2, grid.nodes)


def _bc_residual(bc: BoundaryConditions, x: SampledFunction, dx: np.ndarray) -> float:
    b = bc.apply(x.values[0], dx[0], x.values[-1], dx[-1])
    d = bc.targets(x.dim)
    return float(np.sum(np.linalg.norm(b - d, axis=1)))


def picard_solve(
    kernel: GreensKernel,
    h: SampledFunction,
    rhs: RightHandSide,
    selection: Literal["nearest", "center"] = "nearest",
    tol: float = 1e-10,
    max_iter: int = 500,
    w0: Optional[SampledFunction] = None,
    dh: Optional[SampledFunction] = None,
    raise_on_divergence: bool = True,
) -> Solution:
    """Iterate w_{k+1} = N_F(h + H(w_k)) until ||w_{k+1} - w_k||_1 <= tol.

    With ``selection='nearest'`` each step takes the point of the box nearest to
    the previous selection, so single-valued problems reduce to plain Picard.
    The run is flagged as not guaranteed when q = ||mu||_1 sup|G| >= 1 or unknown.

    Raises:
        DivergenceError: ``max_iter`` reached or the iterates stop being finite;
            the partial Solution is attached.
    """
    grid = h.grid
    if dh is None:
        dh = SampledFunction(grid, first_derivative(h.values, grid)) if np.any(h.values) else SampledFunction.zeros(grid, h.dim)
    q = contraction_constant(kernel_norms(kernel, grid), rhs, grid)

    w = w0 if w0 is not None else nemytskii(rhs, h, Selection.center())
    increments: List[float] = []
    converged = False
    with Timer("picard_solve"):
        for _ in range(max_iter):
            hw, _ = apply_H(kernel, w)
            x = h + hw
            pick = Selection.nearest_to(w) if selection == "nearest" else Selection.center()
            w_next = nemytskii(rhs, x, pick)
            inc = lp_norms(w_next - w)[0]
            increments.append(inc)
            w = w_next
            if not np.isfinite(inc):
                break
            if inc <= tol:
                converged = True
                break

    hw, dhw = apply_H(kernel, w)
    x = h + hw
    dx = dh + dhw
    finite = bool(np.all(np.isfinite(x.values)))
    residual_ode = lp_norms(SampledFunction(grid, apply_L(kernel.coeffs, x, dx) - w.values))[0] if finite else float("inf")
    residual_bc = _bc_residual(kernel.bc, x, dx.values) if finite else float("inf")
    solution = Solution(
        x=x, dx=dx, w=w,
        residual_ode=residual_ode, residual_bc=residual_bc,
        iterations=len(increments), increments=increments,
        converged=converged, q=q,
    )
    metrics.increment("picard_solves")
    metrics.observe("picard_iterations", solution.iterations)
    metrics.record("picard_last_increment", increments[-1] if increments else 0.0)
    if converged:
        logger.info(
            "Picard iteration converged",
            extra={"iterations": solution.iterations, "last_increment": increments[-1], "q": q},
        )
        return solution

    logger.warning(
        "Picard iteration did not converge",
        extra={"iterations": solution.iterations, "last_increment": increments[-1] if increments else None, "q": q},
    )
    if raise_on_divergence:
        raise DivergenceError(
            f"no convergence after {solution.iterations} iterations "
            f"(last increment {increments[-1] if increments else float('nan'):.3g}, q={q})",
            solution=solution,
        )
    return solution


def residual_check(
    coeffs: CoefficientSet,
    bc: BoundaryConditions,
    rhs: RightHandSide,
    x: SampledFunction,
    dx: Optional[SampledFunction] = None,
) -> ResidualReport:
    """How far x is from solving L x in F(t, x), B_i x = d_i.

    Derivatives not supplied are taken from the same one-sided stencils the
    finite-difference oracle uses at the boundary.
    """
    grid = x.grid
    d1 = dx.values if dx is not None else first_derivative(x.values, grid)
    lx = apply_L(coeffs, x, SampledFunction(grid, d1))
    gap = rhs.distance(grid.nodes, x.values, lx)
    return ResidualReport(
        ode_res=float(grid.weights @ gap),
        bc_res=_bc_residual(bc, x, d1),
        selection_gap=float(gap.max()),
    )


def retract(
    kernel: GreensKernel,
    h: SampledFunction,
    rhs: RightHandSide,
    x: SampledFunction,
    tol: float = 1e-10,
    max_iter: int = 500,
) -> Solution:
    """h + H(w*) where w* is the Picard limit started from the selection nearest to L x."""
    lx = SampledFunction(x.grid, apply_L(kernel.coeffs, x))
    w0 = SampledFunction(x.grid, rhs.project(x.grid.nodes, x.values, lx.values))
    return picard_solve(kernel, h, rhs, tol=tol, max_iter=max_iter, w0=w0)
