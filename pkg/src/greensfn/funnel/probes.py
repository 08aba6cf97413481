"""Sampling probes for accretivity of F and dissipativity of L."""
from typing import Tuple

import numpy as np

from greensfn.core.grid import Grid
from greensfn.models.coefficients import CoefficientSet
from greensfn.models.rhs import RightHandSide
from greensfn.utils.errors import ConditionError

ACCRETIVE_TOL = 1e-10
DISSIPATIVE_TOL = 1e-8


def random_trig_polynomial(
    rng: np.random.Generator, grid: Grid, degree: int, dim: int = 1
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Node values of a random real trigonometric polynomial and its first two derivatives.

    Coefficients are uniform in [-1, 1]; frequencies are 2 pi k, k <= degree.
    """
    t = grid.nodes[:, None]
    x = np.tile(rng.uniform(-1.0, 1.0, dim), (grid.size, 1))
    dx = np.zeros_like(x)
    ddx = np.zeros_like(x)
    for k in range(1, degree + 1):
        a = rng.uniform(-1.0, 1.0, dim)
        b = rng.uniform(-1.0, 1.0, dim)
        omega = 2.0 * np.pi * k
        c, s = np.cos(omega * t), np.sin(omega * t)
        x += a * c + b * s
        dx += omega * (b * c - a * s)
        ddx -= omega ** 2 * (a * c + b * s)
    return x, dx, ddx


def accretivity_probe(
    rhs: RightHandSide, samples: int = 1000, seed: int = 0, scale: float = 2.0, shift: float = 0.0
) -> float:
    """min over random (t, x, y, selections) of <u - w, x - y> - shift |x - y|^2.

    With ``shift = 0`` the right-hand side is accretive on the samples iff the
    result is >= -1e-10; a positive ``shift`` probes strong accretivity.
    """
    rng = np.random.default_rng(seed)
    dim = rhs.dim
    t = rng.uniform(0.0, 1.0, samples)
    x = rng.uniform(-scale, scale, (samples, dim))
    y = rng.uniform(-scale, scale, (samples, dim))
    u = rhs.center(t, x) + rhs.radius(t, x)[:, None] * rng.uniform(-1.0, 1.0, (samples, dim))
    w = rhs.center(t, y) + rhs.radius(t, y)[:, None] * rng.uniform(-1.0, 1.0, (samples, dim))
    diff = x - y
    pairing = np.sum((u - w) * diff, axis=1) - shift * np.sum(diff ** 2, axis=1)
    return float(pairing.min())


def dissipativity_probe(
    coeffs: CoefficientSet, grid: Grid, samples: int = 100, seed: int = 0, degree: int = 5
) -> float:
    """max over random periodic trig polynomials x of <Lx, x> in L2.

    L is dissipative on the samples iff the result is <= 1e-8.

    Raises:
        ConditionError: a0 > 0 on some node.
    """
    a2, a1, a0 = coeffs.evaluate(grid.nodes)
    if np.any(a0 > 0.0):
        raise ConditionError("dissipativity needs a0 <= 0 on [0, 1]", condition_id="dissipativity")
    rng = np.random.default_rng(seed)
    worst = -np.inf
    for _ in range(samples):
        d = int(rng.integers(0, degree + 1))
        x, dx, ddx = random_trig_polynomial(rng, grid, d)
        lx = a2 * ddx[:, 0] + a1 * dx[:, 0] + a0 * x[:, 0]
        worst = max(worst, float(grid.weights @ (lx * x[:, 0])))
    return worst
