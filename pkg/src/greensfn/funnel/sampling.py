"""Solution funnels of box-valued problems sampled through frozen selections."""
import asyncio
import os
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from greensfn.analysis.export import solution_header, solution_rows, write_csv, write_json
from greensfn.core.grid import Grid, SampledFunction
from greensfn.greens.kernel import GreensKernel
from greensfn.greens.norms import kernel_norms
from greensfn.hammerstein.conditions import GROWTH, apriori_bounds, check_conditions
from greensfn.hammerstein.picard import Solution, picard_solve
from greensfn.models.reports import FunnelManifest
from greensfn.models.rhs import RightHandSide
from greensfn.utils.errors import ConditionError
from greensfn.utils.logger import setup_logger
from greensfn.utils.metrics import Timer, metrics

logger = setup_logger(__name__)

SELECTION_MODES = 3
BOUND_SLACK = 1e-3


def selection_field(grid: Grid, dim: int, rng: np.random.Generator, modes: int = SELECTION_MODES) -> np.ndarray:
    """Band-limited node field in [-1, 1]^N: sin of a random trigonometric polynomial."""
    t = grid.nodes[:, None]
    phase = rng.uniform(0.0, 2.0 * np.pi, dim)
    arg = np.tile(phase, (grid.size, 1))
    for k in range(1, modes + 1):
        a = rng.normal(0.0, 1.0 / k, dim)
        b = rng.normal(0.0, 1.0 / k, dim)
        arg = arg + a * np.cos(2.0 * np.pi * k * t) + b * np.sin(2.0 * np.pi * k * t)
    return np.sin(arg)


@dataclass
class FunnelBundle:
    """Converged members of a sampled funnel and the quantities checked on them."""
    seed: int
    members: int
    solutions: List[Solution] = field(default_factory=list)
    seeds: List[int] = field(default_factory=list)
    diameter_c1: float = 0.0
    max_residual: float = 0.0
    bound_R: Optional[float] = None
    sup_bound: Optional[float] = None
    within_bounds: bool = True

    @property
    def converged_count(self) -> int:
        return len(self.solutions)

    @property
    def low_confidence(self) -> bool:
        return 2 * self.converged_count < self.members

    def manifest(self) -> FunnelManifest:
        return FunnelManifest(
            seed=self.seed,
            members=self.members,
            converged_count=self.converged_count,
            diameter_c1=self.diameter_c1,
            max_residual=self.max_residual,
            bound_R=self.bound_R,
            sup_bound=self.sup_bound,
            within_bounds=self.within_bounds,
            low_confidence=self.low_confidence,
            member_seeds=self.seeds,
        )

    def export(self, directory: str) -> List[str]:
        """One CSV per member plus manifest.json."""
        paths = []
        for k, sol in zip(self.seeds, self.solutions):
            rows = solution_rows(sol.x.grid.nodes, sol.x.values, sol.dx.values, sol.w.values)
            paths.append(write_csv(os.path.join(directory, f"member_{k:04d}.csv"), solution_header(sol.x.dim), rows))
        paths.append(write_json(os.path.join(directory, "manifest.json"), self.manifest()))
        return paths


def _diameter(solutions: List[Solution]) -> float:
    if len(solutions) < 2:
        return 0.0
    xs = np.stack([s.x.values for s in solutions])
    dxs = np.stack([s.dx.values for s in solutions])
    worst = 0.0
    for a in range(len(solutions)):
        d0 = np.linalg.norm(xs - xs[a], axis=2).max(axis=1)
        d1 = np.linalg.norm(dxs - dxs[a], axis=2).max(axis=1)
        worst = max(worst, float((d0 + d1).max()))
    return worst


def _solve_member(
    kernel: GreensKernel,
    rhs: RightHandSide,
    grid: Grid,
    h: SampledFunction,
    dh: Optional[SampledFunction],
    seed: int,
    k: int,
    tol: float,
    max_iter: int,
) -> Solution:
    rng = np.random.default_rng([seed, k])
    frozen = rhs.frozen(selection_field(grid, rhs.dim, rng), grid)
    return picard_solve(kernel, h, frozen, selection="center", tol=tol, max_iter=max_iter, dh=dh,
                        raise_on_divergence=False)


async def sample_funnel_async(
    kernel: GreensKernel,
    rhs: RightHandSide,
    members: int,
    seed: int,
    grid: Grid,
    tol: float = 1e-10,
    max_iter: int = 500,
    h: Optional[SampledFunction] = None,
    dh: Optional[SampledFunction] = None,
    workers: int = 4,
    residual_tol: float = 1e-3,
) -> FunnelBundle:
    """Solve ``members`` frozen problems concurrently and collect the converged ones.

    Members are solved in worker threads under a semaphore; results are kept in
    member order. A member is rejected when it does not converge or its ODE
    residual exceeds ``residual_tol * (1 + ||w||_sup)``.

    Raises:
        ConditionError: growth metadata missing or the growth condition fails.
    """
    norms = kernel_norms(kernel, grid)
    growth = check_conditions(norms, rhs, grid).get(GROWTH)
    if not growth.evaluable or not growth.passed:
        raise ConditionError("funnel sampling needs a passing growth condition", condition_id=GROWTH)
    if h is None:
        h = SampledFunction.zeros(grid, rhs.dim)
        dh = SampledFunction.zeros(grid, rhs.dim)
    bounds = apriori_bounds(norms, rhs, grid, h, dh)

    semaphore = asyncio.Semaphore(max(1, workers))

    async def run(k: int) -> Solution:
        async with semaphore:
            return await asyncio.to_thread(_solve_member, kernel, rhs, grid, h, dh, seed, k, tol, max_iter)

    with Timer("sample_funnel"):
        results = await asyncio.gather(*(run(k) for k in range(members)))

    bundle = FunnelBundle(seed=seed, members=members, bound_R=bounds.c1_bound, sup_bound=bounds.sup_norm_bound)
    for k, sol in enumerate(results):
        limit = residual_tol * (1.0 + sol.w.sup())
        if not sol.converged or sol.residual_ode > limit:
            logger.warning(
                "Funnel member rejected",
                extra={"member": k, "converged": sol.converged, "residual_ode": sol.residual_ode},
            )
            continue
        bundle.solutions.append(sol)
        bundle.seeds.append(k)

    bundle.diameter_c1 = _diameter(bundle.solutions)
    bundle.max_residual = max((s.residual_ode for s in bundle.solutions), default=0.0)
    bundle.within_bounds = all(
        s.x.sup() <= bounds.sup_norm_bound * (1.0 + BOUND_SLACK) + 1e-12
        and s.c1_norm() <= bounds.c1_bound * (1.0 + BOUND_SLACK) + 1e-12
        for s in bundle.solutions
    )
    metrics.record("funnel_converged", bundle.converged_count)
    if bundle.low_confidence:
        logger.warning("Low-confidence funnel bundle", extra={"converged": bundle.converged_count, "members": members})
    return bundle


def sample_funnel(
    kernel: GreensKernel,
    rhs: RightHandSide,
    members: int,
    seed: int,
    grid: Grid,
    tol: float = 1e-10,
    **kwargs,
) -> FunnelBundle:
    """Synchronous wrapper of :func:`sample_funnel_async`."""
    return asyncio.run(sample_funnel_async(kernel, rhs, members, seed, grid, tol=tol, **kwargs))
