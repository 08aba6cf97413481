"""The F + x/n approximation scheme: perturbed problems, multi-start uniqueness and eps_n."""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

import numpy as np

from greensfn.core.grid import Grid, SampledFunction, lp_norms
from greensfn.funnel.probes import random_trig_polynomial
from greensfn.greens.kernel import GreensKernel
from greensfn.greens.norms import kernel_norms
from greensfn.hammerstein.conditions import COMPARISON_NORM, PERTURBED_GROWTH, check_conditions
from greensfn.hammerstein.operators import apply_H
from greensfn.hammerstein.picard import Solution, picard_solve
from greensfn.models.reports import KernelNorms, SchemeEntry, SchemeReport
from greensfn.models.rhs import RightHandSide
from greensfn.utils.errors import ConditionError, ConfigurationError, DivergenceError
from greensfn.utils.logger import setup_logger

logger = setup_logger(__name__)

SPREAD_TOL = 1e-6


@dataclass(frozen=True)
class PerturbedProblem:
    base: RightHandSide
    n: int
    rhs: RightHandSide
    eps_n: Optional[float]
    radius: Optional[float]


@dataclass
class PerturbedSolution:
    solution: Solution
    spread: float
    converged_starts: int
    diverged_starts: int


def uniform_radius(norms: KernelNorms, rhs: RightHandSide, grid: Grid) -> Optional[float]:
    """C1 radius R containing the solutions of every perturbed problem with ||h||_C1 <= 1.

    None without growth metadata or when (m+1) sup||G(t,.)||_2 >= 1.
    """
    if not rhs.has_growth:
        return None
    m = float(rhs.growth_m)
    denom = 1.0 - (m + 1.0) * norms.sup_l2_rows
    if denom <= 0.0:
        return None
    c_l2 = lp_norms(SampledFunction(grid, np.abs(rhs.sample_metadata("growth_c", grid))))[1]
    r1 = (1.0 + norms.sup_l2_rows * c_l2) / denom
    return r1 + 1.0 + norms.sup_l2_rows_dt * (c_l2 + (m + 1.0) * r1)


def perturb(rhs: RightHandSide, n: int, norms: KernelNorms, grid: Grid) -> PerturbedProblem:
    """F_n = F + x/n with shifted metadata and eps_n = (sup|G| + sup||dG/dt(t,.)||_2) R / n.

    Raises:
        ConditionError: (m+1) sup||G(t,.)||_2 >= 1 with growth metadata declared.
    """
    if n < 1:
        raise ConfigurationError(f"perturbation index must be >= 1, got {n}")
    if rhs.has_growth and (rhs.growth_m + 1.0) * norms.sup_l2_rows >= 1.0:
        raise ConditionError(
            f"(m+1) sup||G(t,.)||_2 = {(rhs.growth_m + 1.0) * norms.sup_l2_rows:.6g} >= 1",
            condition_id=PERTURBED_GROWTH,
        )
    radius = uniform_radius(norms, rhs, grid)
    eps = None if radius is None else (norms.sup_abs + norms.sup_l2_rows_dt) * radius / n
    return PerturbedProblem(base=rhs, n=n, rhs=rhs.shifted(1.0 / n), eps_n=eps, radius=radius)


def _c1_distance(a: Solution, b: Solution) -> float:
    return (a.x - b.x).sup() + (a.dx - b.dx).sup()


def solve_perturbed(
    pp: PerturbedProblem,
    kernel: GreensKernel,
    grid: Grid,
    h: Optional[SampledFunction] = None,
    dh: Optional[SampledFunction] = None,
    starts: int = 10,
    seed: int = 0,
    tol: float = 1e-10,
    max_iter: int = 500,
    start_scale: float = 1.0,
) -> PerturbedSolution:
    """Multi-start Picard on the perturbed problem; the spread measures (non)uniqueness.

    Raises:
        ConditionError: the base right-hand side is box-valued or not accretive.
        DivergenceError: no start converged.
    """
    if pp.base.is_box or not pp.base.accretive:
        raise ConditionError("uniqueness probe needs a single-valued accretive right-hand side")
    dim = pp.rhs.dim
    if h is None:
        h = SampledFunction.zeros(grid, dim)
        dh = SampledFunction.zeros(grid, dim)
    if pp.eps_n is not None and dh is not None and h.sup() + dh.sup() > pp.eps_n:
        logger.warning(
            "Inhomogeneity exceeds eps_n",
            extra={"n": pp.n, "eps_n": pp.eps_n, "h_c1": h.sup() + dh.sup()},
        )

    converged: List[Solution] = []
    diverged = 0
    for k in range(starts):
        rng = np.random.default_rng([seed, k])
        w0 = SampledFunction(grid, rng.uniform(-start_scale, start_scale, (grid.size, dim)))
        sol = picard_solve(kernel, h, pp.rhs, tol=tol, max_iter=max_iter, w0=w0, dh=dh,
                           raise_on_divergence=False)
        if sol.converged:
            converged.append(sol)
        else:
            diverged += 1
            logger.warning("Perturbed start diverged", extra={"n": pp.n, "start": k})
    if not converged:
        raise DivergenceError(f"all {starts} starts diverged for n={pp.n}")

    spread = 0.0
    for i in range(len(converged)):
        for j in range(i + 1, len(converged)):
            spread = max(spread, _c1_distance(converged[i], converged[j]))
    best = min(converged, key=lambda s: s.residual_ode)
    return PerturbedSolution(best, spread, len(converged), diverged)


def dependence_ratio(
    pp: PerturbedProblem,
    kernel: GreensKernel,
    grid: Grid,
    h: SampledFunction,
    dh: SampledFunction,
    **kwargs,
) -> Dict[str, float]:
    """Continuous dependence on h: ||x_h - x_0||_C1 / ||h||_C1 and the effect of halving h."""
    zero = SampledFunction.zeros(grid, h.dim)
    x0 = solve_perturbed(pp, kernel, grid, zero, zero, **kwargs).solution
    xh = solve_perturbed(pp, kernel, grid, h, dh, **kwargs).solution
    xh2 = solve_perturbed(pp, kernel, grid, 0.5 * h, 0.5 * dh, **kwargs).solution
    d_full = _c1_distance(xh, x0)
    d_half = _c1_distance(xh2, x0)
    return {
        "ratio": d_full / (h.sup() + dh.sup()),
        "halving": d_half / d_full if d_full > 0 else 0.0,
    }


def scheme_samples(grid: Grid, dim: int, radius: float, samples: int, seed: int) -> List[SampledFunction]:
    """Random smooth x with ||x||_C1 <= radius."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(samples):
        x, dx, _ = random_trig_polynomial(rng, grid, int(rng.integers(1, 6)), dim)
        c1 = np.linalg.norm(x, axis=1).max() + np.linalg.norm(dx, axis=1).max()
        out.append(SampledFunction(grid, x * (radius * rng.uniform(0.0, 1.0) / c1)))
    return out


def approximation_scheme(
    rhs: RightHandSide,
    kernel: GreensKernel,
    grid: Grid,
    n_list: Iterable[int],
    tol: float = 1e-10,
    samples: int = 20,
    starts: int = 10,
    seed: int = 0,
    max_iter: int = 500,
    spread_tol: float = SPREAD_TOL,
) -> SchemeReport:
    """Check, per n, that ||H(x/n)||_C1 <= eps_n on the C1 ball and that F_n has one solution.

    Raises:
        ConditionError: ``rhs`` is not single-valued and accretive, or one of the
            comparison-norm and perturbed-growth conditions is evaluable and fails.
    """
    if rhs.is_box or not rhs.accretive:
        raise ConditionError("the approximation scheme needs a single-valued accretive right-hand side")
    norms = kernel_norms(kernel, grid)
    report = check_conditions(norms, rhs, grid)
    for cid in (COMPARISON_NORM, PERTURBED_GROWTH):
        c = report.get(cid)
        if c.evaluable and not c.passed:
            raise ConditionError(f"condition {cid} fails: lhs = {c.lhs:.6g}", condition_id=cid)

    radius = uniform_radius(norms, rhs, grid)
    xs = scheme_samples(grid, rhs.dim, radius if radius is not None else 1.0, samples, seed)
    entries = []
    for n in n_list:
        pp = perturb(rhs, n, norms, grid)
        gap = 0.0
        for x in xs:
            hx, dhx = apply_H(kernel, x * (1.0 / n))
            gap = max(gap, hx.sup() + dhx.sup())
        entry = SchemeEntry(
            n=n,
            eps_n=pp.eps_n,
            measured_gap=gap,
            condition_a=None if pp.eps_n is None else bool(gap <= pp.eps_n),
        )
        try:
            result = solve_perturbed(pp, kernel, grid, starts=starts, seed=seed, tol=tol, max_iter=max_iter)
            entry.spread = result.spread
            entry.condition_b = bool(result.spread <= spread_tol and result.diverged_starts == 0)
            entry.converged_starts = result.converged_starts
            entry.diverged_starts = result.diverged_starts
        except DivergenceError as e:
            entry.condition_b = False
            entry.diverged_starts = starts
            entry.note = str(e)
        entries.append(entry)
        logger.info("Scheme entry evaluated", extra=entry.model_dump())
    return SchemeReport(radius=radius, spread_tol=spread_tol, entries=entries)
