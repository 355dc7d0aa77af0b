"""Exact Grothendieck-Witt-valued inflection data of hyperelliptic curves."""

from .curve import (
    CurveFunction,
    HyperellipticCurve,
    RamificationPoint,
    det_M,
    expand_at_point,
    gv_path_count,
    hasse_wronskian,
    matrix_M,
    monomial_basis,
)
from .errors import GwinflectError
from .fields import (
    ExtensionField,
    FieldElement,
    FunctionField,
    GF,
    LaurentField,
    PrimeField,
    QQ,
    RR,
    legendre_symbol,
    norm_and_trace,
    sqrt_in_finite_field,
)
from .factor import factor_over_fq, roots_in_field
from .gw import GWClass, GWInvariants, gw_add, gw_invariants, gw_scale, gw_trace
from .indices import (
    GlobalAudit,
    LocalIndexReport,
    audit,
    global_class,
    index_by_series_oracle,
    index_infinity,
    index_ramified,
    index_unramified,
    local_index_1d,
    orientation_coherent,
)
from .inflection import atomic_p, atomic_p_charp, inflection_poly, inflection_poly_direct
from .parser import parse_poly
from .poly import DensePoly, format_poly, format_poly_cleared
from .realroots import AlgebraicReal, algebraic_sign, isolate_real_roots
from .series import TruncatedSeries
from .explorer import count_points_projective, sato_tate_c2, sweep_weierstrass

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
