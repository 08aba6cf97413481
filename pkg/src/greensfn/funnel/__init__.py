"""Perturbation scheme, funnel sampling and accretivity/dissipativity probes."""
from .perturbation import (
    PerturbedProblem,
    PerturbedSolution,
    approximation_scheme,
    dependence_ratio,
    perturb,
    solve_perturbed,
    uniform_radius,
)
from .probes import accretivity_probe, dissipativity_probe, random_trig_polynomial
from .sampling import FunnelBundle, sample_funnel, sample_funnel_async, selection_field

__all__ = [
    'FunnelBundle',
    'PerturbedProblem',
    'PerturbedSolution',
    'accretivity_probe',
    'approximation_scheme',
    'dependence_ratio',
    'dissipativity_probe',
    'perturb',
    'random_trig_polynomial',
    'sample_funnel',
    'sample_funnel_async',
    'selection_field',
    'solve_perturbed',
    'uniform_radius',
]
