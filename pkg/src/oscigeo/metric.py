"""The bi-invariant Lorentzian metric, curvature and causal types.

In the left-invariant frame X0..X3 the metric has the constant Gram
matrix with <X0,X3> = <X1,X1> = <X2,X2> = 1 and all other products zero,
so the squared norm of a = (a0, a1, a2, a3) is a1^2 + a2^2 + 2 a0 a3 and
causal classification is an exact sign test in Q(pi).

The Lie algebra has structure relations [X0,X1] = X2, [X0,X2] = -X1,
[X1,X2] = X3 with X3 central; because the metric is bi-invariant the
curvature operator is algebraic, R(X,Y)Z = -1/4 [[X,Y],Z], and the Ricci
tensor is -1/4 of the Killing form.  Everything here is exact; the float
entry points exist only for cross-checks against numeric machinery.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import GroupElement
from .scalar import Scalar, ScalarLike

__all__ = [
    "TangentVector",
    "CausalType",
    "CoordinateMetric",
    "FRAME_GRAM",
    "frame_inner",
    "metric_at",
    "metric_matrix_f",
    "causal_type",
    "bracket",
    "curvature_op",
    "ad_matrix",
    "killing_form",
    "ricci",
    "ricci_from_curvature_trace",
    "x_frame_f",
    "e_frame_f",
]


@dataclass(frozen=True)
class TangentVector:
    """Coefficients (a0, a1, a2, a3) in the left-invariant frame."""

    a0: Scalar
    a1: Scalar
    a2: Scalar
    a3: Scalar

    @staticmethod
    def of(a0: ScalarLike, a1: ScalarLike, a2: ScalarLike, a3: ScalarLike) -> "TangentVector":
        return TangentVector(*(Scalar.coerce(a) for a in (a0, a1, a2, a3)))

    @property
    def components(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.a0, self.a1, self.a2, self.a3)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.components)

    def norm_sq(self) -> Scalar:
        return self.a1 * self.a1 + self.a2 * self.a2 + 2 * self.a0 * self.a3

    def scale(self, factor: ScalarLike) -> "TangentVector":
        f = Scalar.coerce(factor)
        return TangentVector(self.a0 * f, self.a1 * f, self.a2 * f, self.a3 * f)

    def add(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(
            self.a0 + other.a0, self.a1 + other.a1, self.a2 + other.a2, self.a3 + other.a3
        )

    def to_float(self) -> np.ndarray:
        return np.array([float(a) for a in self.components])

    def __str__(self) -> str:
        return f"[{self.a0}, {self.a1}, {self.a2}, {self.a3}]"


X0 = TangentVector.of(1, 0, 0, 0)
X1 = TangentVector.of(0, 1, 0, 0)
X2 = TangentVector.of(0, 0, 1, 0)
X3 = TangentVector.of(0, 0, 0, 1)
FRAME = (X0, X1, X2, X3)

# constant Gram matrix of the frame
FRAME_GRAM = tuple(
    tuple(Scalar(1) if {i, j} == {0, 3} or (i == j and i in (1, 2)) else Scalar(0) for j in range(4))
    for i in range(4)
)


def frame_inner(u: TangentVector, w: TangentVector) -> Scalar:
    """<u, w> in the frame: u1 w1 + u2 w2 + u0 w3 + u3 w0."""
    return u.a1 * w.a1 + u.a2 * w.a2 + u.a0 * w.a3 + u.a3 * w.a0


class CausalType(enum.Enum):
    NULL = "null"
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"


def causal_type(X: TangentVector) -> CausalType:
    """Exact sign of the squared norm: zero null, positive spacelike."""
    s = X.norm_sq().sign()
    if s == 0:
        return CausalType.NULL
    return CausalType.SPACELIKE if s > 0 else CausalType.TIMELIKE


# ---------------------------------------------------------------------------
# coordinate metric
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoordinateMetric:
    """The metric matrix at a point, rows/cols ordered (dt, dx, dy, dz)."""

    point: GroupElement
    matrix: tuple[tuple[Scalar, ...], ...]


def metric_at(p: GroupElement) -> CoordinateMetric:
    """Coordinate matrix of the metric dt(dz + y/2 dx - x/2 dy) + dx^2 + dy^2."""
    zero = Scalar(0)
    one = Scalar(1)
    gy = p.y / 2
    gx = -(p.x / 2)
    matrix = (
        (zero, gy, gx, one),
        (gy, one, zero, zero),
        (gx, zero, one, zero),
        (one, zero, zero, zero),
    )
    return CoordinateMetric(p, matrix)


def metric_matrix_f(p) -> np.ndarray:
    """Float coordinate metric; p is a length-4 array (t, x, y, z)."""
    p = np.asarray(p, dtype=float)
    x, y = p[1], p[2]
    return np.array([
        [0.0, y / 2, -x / 2, 1.0],
        [y / 2, 1.0, 0.0, 0.0],
        [-x / 2, 0.0, 1.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ])


def x_frame_f(p) -> np.ndarray:
    """Columns are the frame fields X0..X3 of G in coordinates at p."""
    p = np.asarray(p, dtype=float)
    t, x, y = p[0], p[1], p[2]
    c, s = math.cos(t), math.sin(t)
    return np.array([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, c, -s, 0.0],
        [0.0, s, c, 0.0],
        [0.0, 0.5 * (x * s - y * c), 0.5 * (x * c + y * s), 1.0],
    ])


def e_frame_f(p) -> np.ndarray:
    """Columns are the frame fields e0..e3 of N in coordinates at p."""
    p = np.asarray(p, dtype=float)
    x, y = p[1], p[2]
    return np.array([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, -0.5 * y, 0.5 * x, 1.0],
    ])


# ---------------------------------------------------------------------------
# brackets, curvature, Ricci
# ---------------------------------------------------------------------------

def bracket(X: TangentVector, Y: TangentVector) -> TangentVector:
    """Lie bracket by bilinear extension of the structure relations."""
    c01 = X.a0 * Y.a1 - X.a1 * Y.a0
    c02 = X.a0 * Y.a2 - X.a2 * Y.a0
    c12 = X.a1 * Y.a2 - X.a2 * Y.a1
    return TangentVector(Scalar(0), -c02, c01, c12)


def curvature_op(X: TangentVector, Y: TangentVector, Z: TangentVector) -> TangentVector:
    """R(X, Y)Z = -1/4 [[X, Y], Z]."""
    return bracket(bracket(X, Y), Z).scale(Fraction(-1, 4))


def ad_matrix(X: TangentVector) -> tuple[tuple[Scalar, ...], ...]:
    """Matrix of ad(X) in the frame basis; column j is [X, Xj]."""
    cols = [bracket(X, B).components for B in FRAME]
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))


def killing_form(X: TangentVector, Y: TangentVector) -> Scalar:
    """B(X, Y) = trace(ad X o ad Y)."""
    ax = ad_matrix(X)
    ay = ad_matrix(Y)
    total = Scalar(0)
    for i in range(4):
        for j in range(4):
            total = total + ax[i][j] * ay[j][i]
    return total


def ricci(X: TangentVector, Y: TangentVector) -> Scalar:
    """Ricci tensor via the Killing form: Ric = -1/4 B."""
    return killing_form(X, Y) * Fraction(-1, 4)


def ricci_from_curvature_trace(X: TangentVector, Y: TangentVector) -> Scalar:
    """Independent Ricci route: trace of Z -> R(Z, X)Y in the frame.

    The trace must be taken against the dual frame; with the Gram matrix
    above the dual of (X0, X1, X2, X3) is (X3, X1, X2, X0), so the trace
    is sum_i <R(Xi, X)Y, Xi*>.  Used to pin the sign of the curvature.
    """
    dual = (FRAME[3], FRAME[1], FRAME[2], FRAME[0])
    total = Scalar(0)
    for i in range(4):
        total = total + frame_inner(curvature_op(FRAME[i], X, Y), dual[i])
    return total
