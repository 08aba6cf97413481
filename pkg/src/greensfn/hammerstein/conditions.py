"""Existence conditions, contraction constant and a-priori bounds."""
from typing import Optional

import numpy as np

from greensfn.core.grid import Grid, SampledFunction, lp_norms
from greensfn.models.reports import (
    AprioriBounds,
    Condition,
    ConditionReport,
    KernelNorms,
    LipschitzBounds,
)
from greensfn.models.rhs import RightHandSide
from greensfn.utils.errors import ConditionError
from greensfn.utils.logger import setup_logger

logger = setup_logger(__name__)

GROWTH = "growth"
COMPARISON_NORM = "comparison_norm"
PERTURBED_GROWTH = "perturbed_growth"
LIPSCHITZ = "lipschitz"
COMPARISON_RADIUS = "comparison_radius"


def metadata_norms(rhs: RightHandSide, name: str, grid: Grid) -> Optional[tuple]:
    """(L1, L2, sup) norms of a scalar metadata function, None when undeclared."""
    values = rhs.sample_metadata(name, grid)
    if values is None:
        return None
    return lp_norms(SampledFunction(grid, np.abs(values)))


def _condition(condition_id: str, lhs: Optional[float], note: str) -> Condition:
    if lhs is None:
        return Condition(condition_id=condition_id, evaluable=False, note=f"{note} (not evaluable)")
    return Condition(
        condition_id=condition_id,
        lhs=float(lhs),
        rhs=1.0,
        margin=1.0 - float(lhs),
        passed=bool(lhs < 1.0),
        note=note,
    )


def contraction_constant(norms: KernelNorms, rhs: RightHandSide, grid: Grid) -> Optional[float]:
    """q = ||mu||_1 sup|G|, or None without a Lipschitz modulus."""
    mu = metadata_norms(rhs, "mu", grid)
    return None if mu is None else mu[0] * norms.sup_abs


def check_conditions(
    norms: KernelNorms,
    rhs: RightHandSide,
    grid: Grid,
    spectral_radius: Optional[float] = None,
) -> ConditionReport:
    """Evaluate every condition the metadata of ``rhs`` allows; missing metadata is not a failure.

    The perturbed-growth condition only gates the F + x/n scheme and is
    evaluated for right-hand sides declared accretive.
    """
    m = rhs.growth_m
    eta = metadata_norms(rhs, "eta", grid)
    q = contraction_constant(norms, rhs, grid)

    conditions = [
        _condition(GROWTH, None if m is None else m * norms.sup_l2_rows, "m sup||G(t,.)||_2 < 1"),
        _condition(
            COMPARISON_NORM,
            None if eta is None else 2.0 * norms.sup_l2_rows * eta[1],
            "2 sup||G(t,.)||_2 ||eta||_2 < 1",
        ),
        _condition(
            PERTURBED_GROWTH,
            None if m is None or not rhs.accretive else (m + 1.0) * norms.sup_l2_rows,
            "(m+1) sup||G(t,.)||_2 < 1",
        ),
        _condition(LIPSCHITZ, q, "||mu||_1 sup|G| < 1"),
    ]
    if spectral_radius is not None:
        conditions.append(_condition(COMPARISON_RADIUS, spectral_radius, "r(comparison operator) < 1"))

    report = ConditionReport(conditions=conditions, q=q, thresholds=norms.thresholds())
    logger.info(
        "Evaluated existence conditions",
        extra={
            "passed": [c.condition_id for c in conditions if c.passed],
            "failed": [c.condition_id for c in conditions if c.passed is False],
            "not_evaluable": [c.condition_id for c in conditions if not c.evaluable],
            "q": q,
        },
    )
    return report


def apriori_bounds(
    norms: KernelNorms,
    rhs: RightHandSide,
    grid: Grid,
    h: Optional[SampledFunction] = None,
    dh: Optional[SampledFunction] = None,
) -> AprioriBounds:
    """Sup-norm bound and C1 radius of every solution of x = h + H(w), |w| <= c + m|x|.

    Raises:
        ConditionError: growth metadata missing or m sup||G(t,.)||_2 >= 1.
    """
    if not rhs.has_growth:
        raise ConditionError("a-priori bounds need growth metadata (c, m)", condition_id=GROWTH)
    m = float(rhs.growth_m)
    denom = 1.0 - m * norms.sup_l2_rows
    if denom <= 0.0:
        raise ConditionError(
            f"growth condition fails: m sup||G(t,.)||_2 = {m * norms.sup_l2_rows:.6g} >= 1",
            condition_id=GROWTH,
        )
    c = np.abs(rhs.sample_metadata("growth_c", grid))
    c_l2 = lp_norms(SampledFunction(grid, c))[1]
    h_sup = h.sup() if h is not None else 0.0
    h_c1 = h_sup + (dh.sup() if dh is not None else 0.0)

    sup_bound = (h_sup + norms.sup_l2_rows * c_l2) / denom
    c_hat = lp_norms(SampledFunction(grid, c + m * sup_bound))[1]
    radius = h_c1 + c_hat * (norms.sup_l2_rows + norms.sup_l2_rows_dt)
    return AprioriBounds(sup_norm_bound=sup_bound, c1_bound=radius)


def lipschitz_bounds(
    norms: KernelNorms, rhs: RightHandSide, grid: Grid, h: Optional[SampledFunction] = None
) -> LipschitzBounds:
    """Bounds from the contraction form: ||w||_1 <= (||mu||_1 ||h|| + ||alpha||_1) / (1 - q).

    Raises:
        ConditionError: mu or alpha missing, or q >= 1.
    """
    mu = metadata_norms(rhs, "mu", grid)
    alpha = metadata_norms(rhs, "alpha", grid)
    if mu is None or alpha is None:
        raise ConditionError("Lipschitz bounds need mu and alpha", condition_id=LIPSCHITZ)
    q = mu[0] * norms.sup_abs
    if q >= 1.0:
        raise ConditionError(f"contraction constant q = {q:.6g} >= 1", condition_id=LIPSCHITZ)
    h_sup = h.sup() if h is not None else 0.0
    w_bound = (mu[0] * h_sup + alpha[0]) / (1.0 - q)
    return LipschitzBounds(
        selection_l1_bound=w_bound,
        sup_norm_bound=h_sup + norms.sup_abs * w_bound,
        q=q,
    )
