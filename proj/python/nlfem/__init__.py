"""Nonlocal diffusion on uniform grids.

Thin wrapper over the C++ core: kernels, generating tensors, the block
Toeplitz operator with its CG solver, and convergence studies.
"""

from ._core import (
    GeneratingTensor,
    Kernel,
    ToeplitzOperator,
    assemble,
    bspline,
    bspline_derivative,
    classical_tensor,
    closed_form_table,
    convergence_study,
    dense_matrix,
    load_tensor,
    loglog_slope,
    make_kernel,
    tensor_band,
)

__all__ = [
    "GeneratingTensor",
    "Kernel",
    "ToeplitzOperator",
    "assemble",
    "bspline",
    "bspline_derivative",
    "classical_tensor",
    "closed_form_table",
    "convergence_study",
    "dense_matrix",
    "load_tensor",
    "loglog_slope",
    "make_kernel",
    "tensor_band",
]
