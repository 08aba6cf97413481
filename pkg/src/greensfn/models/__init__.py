"""Pydantic models for greensfn."""

from .coefficients import BoundaryConditions, CoefficientSet
from .problem import ProblemSpec
from .reports import (
    AprioriBounds,
    Condition,
    ConditionReport,
    FunnelManifest,
    KernelDiagnostics,
    KernelNorms,
    LipschitzBounds,
    ResidualReport,
    SchemeEntry,
    SchemeReport,
)
from .rhs import RightHandSide

__all__ = [
    'AprioriBounds',
    'BoundaryConditions',
    'CoefficientSet',
    'Condition',
    'ConditionReport',
    'FunnelManifest',
    'KernelDiagnostics',
    'KernelNorms',
    'LipschitzBounds',
    'ProblemSpec',
    'ResidualReport',
    'RightHandSide',
    'SchemeEntry',
    'SchemeReport',
]
