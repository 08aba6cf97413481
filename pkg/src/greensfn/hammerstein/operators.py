"""Hammerstein operator H, the Nemytskii selection operator and metadata probes."""
from dataclasses import dataclass
from typing import Dict, Literal, Optional, Tuple

import numpy as np

from greensfn.core.grid import SampledFunction
from greensfn.greens.kernel import GreensKernel
from greensfn.models.rhs import RightHandSide


def apply_H(kernel: GreensKernel, u: SampledFunction) -> Tuple[SampledFunction, SampledFunction]:
    """(H u, d/dt H u) with H u(t) = int_0^1 G(t, s) u(s) ds, componentwise on R^N."""
    grid = u.grid
    km = kernel.matrices(grid)
    return (
        SampledFunction(grid, km.operator @ u.values),
        SampledFunction(grid, km.derivative @ u.values),
    )


@dataclass(frozen=True)
class Selection:
    """How nemytskii picks a point of F(t_i, x(t_i)) at each node."""
    kind: Literal["center", "random", "nearest"] = "center"
    seed: Optional[int] = None
    target: Optional[SampledFunction] = None

    @classmethod
    def center(cls) -> "Selection":
        return cls("center")

    @classmethod
    def random(cls, seed: int) -> "Selection":
        return cls("random", seed=seed)

    @classmethod
    def nearest_to(cls, v: SampledFunction) -> "Selection":
        return cls("nearest", target=v)


def nemytskii(rhs: RightHandSide, x: SampledFunction, selection: Selection = Selection()) -> SampledFunction:
    """A node-wise selection w(t_i) in F(t_i, x(t_i))."""
    t = x.grid.nodes
    center = rhs.center(t, x.values)
    if not rhs.is_box:
        return SampledFunction(x.grid, center)
    if selection.kind == "center":
        return SampledFunction(x.grid, center)
    if selection.kind == "random":
        rng = np.random.default_rng(selection.seed)
        theta = rng.uniform(-1.0, 1.0, size=center.shape)
        return SampledFunction(x.grid, center + rhs.radius(t, x.values)[:, None] * theta)
    if selection.target is None:
        raise ValueError("nearest selection needs a target")
    return SampledFunction(x.grid, rhs.project(t, x.values, selection.target.values))


def verify_rhs_metadata(
    rhs: RightHandSide, samples: int = 1000, seed: int = 0, scale: float = 2.0
) -> Dict[str, Optional[float]]:
    """Worst violations of the declared growth and Lipschitz bounds on random probes.

    Returns the maximal excess (positive means violated) for each declared bound,
    ``None`` for undeclared ones.
    """
    rng = np.random.default_rng(seed)
    n_dim = rhs.dim
    t = rng.uniform(0.0, 1.0, samples)
    x = rng.uniform(-scale, scale, (samples, n_dim))
    y = rng.uniform(-scale, scale, (samples, n_dim))
    fx = rhs.center(t, x)
    rx = rhs.radius(t, x)
    root_n = np.sqrt(n_dim)
    result: Dict[str, Optional[float]] = {"growth": None, "lipschitz": None}
    if rhs.has_growth:
        lhs = np.linalg.norm(fx, axis=1) + root_n * rx
        rhs_bound = np.asarray(rhs.growth_c(t), dtype=float) + rhs.growth_m * np.linalg.norm(x, axis=1)
        result["growth"] = float(np.max(lhs - rhs_bound))
    if rhs.mu is not None:
        fy = rhs.center(t, y)
        ry = rhs.radius(t, y)
        lhs = np.linalg.norm(fx - fy, axis=1) + root_n * np.abs(rx - ry)
        bound = np.asarray(rhs.mu(t), dtype=float) * np.linalg.norm(x - y, axis=1)
        result["lipschitz"] = float(np.max(lhs - bound))
    return result
