"""Grids, quadrature, norms and the RK4 integrator."""
from .grid import (
    Grid,
    SampledFunction,
    c1_norm,
    first_derivative,
    lp_norms,
    quadrature,
    second_derivative,
)
from .ivp import solve_ivp2

__all__ = [
    'Grid',
    'SampledFunction',
    'c1_norm',
    'first_derivative',
    'lp_norms',
    'quadrature',
    'second_derivative',
    'solve_ivp2',
]
