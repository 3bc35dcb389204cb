"""Exact Chern-class calculus in Chow rings with lci certificates.

The heavy lifting happens in the C++ extension ``_chernforge``; this package
re-exports its surface. ``run_program`` executes the chernforge DSL, the
``certify_*`` functions emit certificates directly, and ``selftest`` runs the
exact invariant suites.
"""

from ._chernforge import (
    ChernforgeError,
    certify_top,
    certify_xi,
    kleiman_smooth_bound,
    lagrange_extrapolate_coeffs,
    run_program,
    selftest,
    solve_linear,
    vandermonde,
    verify_top_universal,
    __version__,
)

__all__ = [
    "ChernforgeError",
    "certify_top",
    "certify_xi",
    "kleiman_smooth_bound",
    "lagrange_extrapolate_coeffs",
    "run_program",
    "selftest",
    "solve_linear",
    "vandermonde",
    "verify_top_universal",
    "__version__",
]
