"""Exact arithmetic for Kostant partition functions, flow polytopes and the
Lorentzian property of their projected integer point transforms."""

from .kostant import enumerate_flows, kostant
from .lorentzian import (
    build_K_matrix,
    charpoly,
    conjugate_antidiagonal,
    expand_matrix,
    inertia,
    is_lorentzian_normalized,
    log_concavity_check,
)
from .multigraph import Multigraph, extension, sink_structure
from .permutahedra import is_m_convex
from .polyalg import Polynomial, normalize
from .projections import gex_transport, sigma_phi, sigma_psi
from .volume import hessian_via_volume, volume_polynomial

__all__ = [
    "Multigraph", "Polynomial", "build_K_matrix", "charpoly", "conjugate_antidiagonal",
    "enumerate_flows", "expand_matrix", "extension", "gex_transport", "hessian_via_volume",
    "inertia", "is_lorentzian_normalized", "is_m_convex", "kostant", "log_concavity_check",
    "normalize", "sigma_phi", "sigma_psi", "sink_structure", "volume_polynomial",
]
__version__ = "0.1.0"
