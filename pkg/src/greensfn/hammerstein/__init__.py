"""Hammerstein operator, existence conditions, Picard solver and finite-difference oracle."""
from .conditions import (
    apriori_bounds,
    check_conditions,
    contraction_constant,
    lipschitz_bounds,
    metadata_norms,
)
from .operators import Selection, apply_H, nemytskii, verify_rhs_metadata
from .oracle import fd_oracle
from .picard import Solution, apply_L, picard_solve, residual_check, retract

__all__ = [
    'Selection',
    'Solution',
    'apply_H',
    'apply_L',
    'apriori_bounds',
    'check_conditions',
    'contraction_constant',
    'fd_oracle',
    'lipschitz_bounds',
    'metadata_norms',
    'nemytskii',
    'picard_solve',
    'residual_check',
    'retract',
    'verify_rhs_metadata',
]
