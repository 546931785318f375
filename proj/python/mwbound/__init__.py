"""Effective Néron-Tate height bounds from Mordell-Weil lattice data.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._mwbound import (
    MwboundError,
    QuadraticLattice,
    alpha_H,
    adjoint,
    bound_kernel,
    bound_spectral,
    certify,
    check_isometry,
    classify,
    compute_mx,
    lagrange_reduce,
    optimize_mu,
    optimize_operators,
    pair,
    report_from_file,
    short_vectors,
    spectrum_of_action,
    validate_lattice,
    verify_gap,
)

__all__ = [
    "MwboundError",
    "QuadraticLattice",
    "alpha_H",
    "adjoint",
    "bound_kernel",
    "bound_spectral",
    "certify",
    "check_isometry",
    "classify",
    "compute_mx",
    "lagrange_reduce",
    "optimize_mu",
    "optimize_operators",
    "pair",
    "report_from_file",
    "short_vectors",
    "spectrum_of_action",
    "validate_lattice",
    "verify_gap",
]
