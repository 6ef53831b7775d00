"""Verification instruments: Riesz bounds, the analytic maps and the stability harness."""
from .maps import (H_residual, cosh_identity_check, h_map, partial_derivative_check,
                   phi_map, psi_map, roundtrip_pair)
from .riesz import BasisKind, BasisSpec, RieszBounds, gram_bounds, gram_matrix
from .stability import StabilityReport, directional_estimates, lipschitz_sweep

__all__ = [
    "BasisKind", "BasisSpec", "RieszBounds", "StabilityReport", "H_residual",
    "cosh_identity_check", "directional_estimates", "gram_bounds", "gram_matrix",
    "h_map", "lipschitz_sweep", "partial_derivative_check", "phi_map", "psi_map",
    "roundtrip_pair",
]
