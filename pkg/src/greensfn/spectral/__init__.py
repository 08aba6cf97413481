"""Spectral radius of the comparison operator: power iteration and Hill shooting."""
from .comparison import (
    ComparisonMatrix,
    RadiusEstimate,
    build_comparison,
    eta_values,
    perturbed_comparison,
    power_iteration,
    power_radius,
    radius_norm_bound,
)
from .hill import HillRoot, hill_discriminant, hill_radius, hill_radius_for_kernel, monodromy

__all__ = [
    'ComparisonMatrix',
    'HillRoot',
    'RadiusEstimate',
    'build_comparison',
    'eta_values',
    'hill_discriminant',
    'hill_radius',
    'hill_radius_for_kernel',
    'monodromy',
    'perturbed_comparison',
    'power_iteration',
    'power_radius',
    'radius_norm_bound',
]
