"""Geometry engine for the oscillator group and its compact Lorentzian quotients.

Exact arithmetic over Q(pi) turns geodesic periodicity on the quotient
solvmanifolds into a decision procedure; closed-form geodesics, the full
isometry machinery and curvature live alongside numeric oracles (RK4,
finite differences) that cross-check every exact formula.
"""

from .scalar import (
    DivisionByZero,
    NotRational,
    PI,
    PI_HALF,
    Scalar,
    in_lattice_1d,
    is_integer_multiple,
    parse_scalar,
    quarter_turns,
)
from .groups import (
    ExactRotationUnavailable,
    GroupElement,
    IDENTITY,
    LatticeSpec,
    Rotation,
    Twist,
    coset_equal,
    coset_normal_form,
    g_inv,
    g_mul,
    lattice_contains,
    n_mul,
    normalizer_contains,
    parse_group_element,
)
from .metric import (
    CausalType,
    CoordinateMetric,
    TangentVector,
    bracket,
    causal_type,
    curvature_op,
    killing_form,
    metric_at,
    ricci,
)
from .geodesics import (
    GeodesicCurve,
    InvalidStep,
    exp_map,
    geodesic_eval,
    integrate_geodesic,
)
from .isometries import (
    IsometryOfG,
    IsotropyElement,
    NotOrthogonal,
    ambrose_hicks_check,
    discrete_isometry,
    fiber_preserving,
    heis_action,
    inner_aut,
    is_isometry_numeric,
    isotropy_matrix,
    parse_isometry,
)
from .quotients import (
    PeriodicityVerdict,
    VerdictKind,
    classify_geodesic,
    minimal_period,
    project_geodesic,
)

__version__ = "0.1.0"

__all__ = [
    "DivisionByZero",
    "NotRational",
    "PI",
    "PI_HALF",
    "Scalar",
    "in_lattice_1d",
    "is_integer_multiple",
    "parse_scalar",
    "quarter_turns",
    "ExactRotationUnavailable",
    "GroupElement",
    "IDENTITY",
    "LatticeSpec",
    "Rotation",
    "Twist",
    "coset_equal",
    "coset_normal_form",
    "g_inv",
    "g_mul",
    "lattice_contains",
    "n_mul",
    "normalizer_contains",
    "parse_group_element",
    "CausalType",
    "CoordinateMetric",
    "TangentVector",
    "bracket",
    "causal_type",
    "curvature_op",
    "killing_form",
    "metric_at",
    "ricci",
    "GeodesicCurve",
    "InvalidStep",
    "exp_map",
    "geodesic_eval",
    "integrate_geodesic",
    "IsometryOfG",
    "IsotropyElement",
    "NotOrthogonal",
    "ambrose_hicks_check",
    "discrete_isometry",
    "fiber_preserving",
    "heis_action",
    "inner_aut",
    "is_isometry_numeric",
    "isotropy_matrix",
    "parse_isometry",
    "PeriodicityVerdict",
    "VerdictKind",
    "classify_geodesic",
    "minimal_period",
    "project_geodesic",
]
