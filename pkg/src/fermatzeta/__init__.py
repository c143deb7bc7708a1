"""Zeta functions of Fermat hypersurfaces over finite fields, computed from
Gauss sums, from brute-force point counts, and from a simulated quantum
circuit whose eigenphases are the normalized Zeta roots."""

__version__ = "0.1.0"

from .characters import Character, char_eval, char_mul, gauss_sum, order_m_character
from .fermat import (
    FermatSurface,
    RationalZeta,
    WeilReport,
    ZetaProfile,
    counts_from_roots,
    fermat_roots,
    reconstruct_rational,
    verify_weil,
)
from .field import FieldCtx, FieldElement, dlog, field_create, trace
from .qsim import (
    PhaseEstimate,
    StateVector,
    approx_count,
    estimate_trace,
    make_chi_state,
    mul_gate,
    phase_estimation,
    qft_field,
    run_algorithm1,
)
from .series import TruncatedSeries, euler_product_series, orbit_counts, zeta_series
from .varieties import PolySystem, count_points, load_poly_system, parse_poly_system, projective_point_count
