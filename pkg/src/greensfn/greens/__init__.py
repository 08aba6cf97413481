"""Green's function construction, closed forms and kernel norms."""
from .fundamental import (
    DETERMINANT_TOL,
    FundamentalSystem,
    compatibility_determinant,
    fundamental_system,
    homogeneous_lift,
)
from .kernel import (
    ClosedFormKernel,
    GreensKernel,
    KernelMatrices,
    NumericKernel,
    build_greens,
    closed_form_kernel,
    kernel_diagnostics,
)
from .norms import kernel_norms

__all__ = [
    'DETERMINANT_TOL',
    'ClosedFormKernel',
    'FundamentalSystem',
    'GreensKernel',
    'KernelMatrices',
    'NumericKernel',
    'build_greens',
    'closed_form_kernel',
    'compatibility_determinant',
    'fundamental_system',
    'homogeneous_lift',
    'kernel_diagnostics',
    'kernel_norms',
]
