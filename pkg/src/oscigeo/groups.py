"""Group structures on the shared point set R^4.

The same points (t, v, z) with v = (x, y) carry three group laws used
here: the solvable oscillator group G (a rotation acts on v as t
advances), the nilpotent group N = R x H3(R), and the Heisenberg group
H3(R) sitting inside both at t = 0.  The group is selected by the
operation, not by the element type.

Exact rotations exist only at quarter-turn angles t in (pi/2)Z, where
the rotation matrix has entries in {-1, 0, 1}; every lattice, normalizer
and periodicity decision needs only these.  The float layer (functions
with an ``_f`` suffix, operating on length-4 numpy arrays) covers
arbitrary angles for tracing and numeric verification.

Quotient conventions: all quotient-level operations on G use right
cosets g Lam in G/Lam; the nilmanifold side uses left cosets Lam n.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalar import (
    PI,
    PI_HALF,
    Scalar,
    ScalarLike,
    in_lattice_1d,
    is_integer_multiple,
    quarter_turns,
)

__all__ = [
    "ExactRotationUnavailable",
    "GroupElement",
    "Rotation",
    "Twist",
    "LatticeSpec",
    "IDENTITY",
    "g_mul",
    "g_inv",
    "n_mul",
    "n_inv",
    "lattice_contains",
    "coset_normal_form",
    "coset_equal",
    "normalizer_contains",
    "n_lattice_contains",
    "n_coset_normal_form",
    "n_coset_equal",
    "rotation_f",
    "g_mul_f",
    "g_inv_f",
    "n_mul_f",
    "coset_normal_form_f",
    "parse_group_element",
]


class ExactRotationUnavailable(ValueError):
    """An exact rotation was requested at an angle outside (pi/2)Z."""


# entries of R(j * pi/2) for j mod 4: (cos, sin)
_QUARTER_TRIG = (
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(-1), Fraction(0)),
    (Fraction(0), Fraction(-1)),
)


@dataclass(frozen=True)
class Rotation:
    """The plane rotation R(t); exact only at quarter-turn angles."""

    angle: Scalar

    def quarter_index(self) -> int:
        j = quarter_turns(self.angle)
        if j is None:
            raise ExactRotationUnavailable(
                f"angle {self.angle} is not an integer multiple of pi/2"
            )
        return j % 4

    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        c, s = _QUARTER_TRIG[self.quarter_index()]
        return ((c, -s), (s, c))

    def apply(self, v: tuple[Scalar, Scalar]) -> tuple[Scalar, Scalar]:
        if v[0].is_zero() and v[1].is_zero():
            # rotating the zero vector needs no exact angle
            return (Scalar(0), Scalar(0))
        (a, b), (c, d) = self.matrix()
        return (v[0] * a + v[1] * b, v[0] * c + v[1] * d)

    def matrix_float(self) -> np.ndarray:
        t = float(self.angle)
        return rotation_f(t)


def rotation_f(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]])


def _cross(v: tuple[Scalar, Scalar], w: tuple[Scalar, Scalar]) -> Scalar:
    # v^T J w with J = [[0, 1], [-1, 0]]
    return v[0] * w[1] - v[1] * w[0]


@dataclass(frozen=True)
class GroupElement:
    """A point (t, v, z) of R^4, element of G, N and (at t = 0) H3."""

    t: Scalar
    x: Scalar
    y: Scalar
    z: Scalar

    @staticmethod
    def of(t: ScalarLike, v: tuple[ScalarLike, ScalarLike], z: ScalarLike) -> "GroupElement":
        return GroupElement(
            Scalar.coerce(t), Scalar.coerce(v[0]), Scalar.coerce(v[1]), Scalar.coerce(z)
        )

    @property
    def v(self) -> tuple[Scalar, Scalar]:
        return (self.x, self.y)

    def to_float(self) -> np.ndarray:
        return np.array([float(self.t), float(self.x), float(self.y), float(self.z)])

    def __str__(self) -> str:
        return f"({self.t}; {self.x}, {self.y}; {self.z})"


IDENTITY = GroupElement.of(0, (0, 0), 0)


def parse_group_element(text: str) -> GroupElement:
    """Parse the "(t; x, y; z)" form with Scalar component syntax."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"group element must look like '(t; x, y; z)', got {text!r}")
    parts = body[1:-1].split(";")
    if len(parts) != 3:
        raise ValueError(f"group element needs two ';' separators, got {text!r}")
    v = parts[1].split(",")
    if len(v) != 2:
        raise ValueError(f"group element needs 'x, y' in the middle, got {text!r}")
    return GroupElement.of(parts[0], (v[0], v[1]), parts[2])


# ---------------------------------------------------------------------------
# group laws
# ---------------------------------------------------------------------------

def g_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    """Product in the oscillator group: (t+t', v + R(t)v', z + z' + cross/2)."""
    w = Rotation(a.t).apply(b.v)
    return GroupElement(
        a.t + b.t,
        a.x + w[0],
        a.y + w[1],
        a.z + b.z + _cross(a.v, w) / 2,
    )


def g_inv(a: GroupElement) -> GroupElement:
    """Inverse in G: (-t, -R(-t)v, -z)."""
    w = Rotation(-a.t).apply(a.v)
    return GroupElement(-a.t, -w[0], -w[1], -a.z)


def n_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    """Product in N = R x H3: no rotation, always exact."""
    return GroupElement(
        a.t + b.t,
        a.x + b.x,
        a.y + b.y,
        a.z + b.z + _cross(a.v, b.v) / 2,
    )


def n_inv(a: GroupElement) -> GroupElement:
    return GroupElement(-a.t, -a.x, -a.y, -a.z)


# ---------------------------------------------------------------------------
# float layer
# ---------------------------------------------------------------------------

def g_mul_f(p, q) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    w = rotation_f(p[0]) @ q[1:3]
    return np.array([
        p[0] + q[0],
        p[1] + w[0],
        p[2] + w[1],
        p[3] + q[3] + 0.5 * (p[1] * w[1] - p[2] * w[0]),
    ])


def g_inv_f(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    w = rotation_f(-p[0]) @ p[1:3]
    return np.array([-p[0], -w[0], -w[1], -p[3]])


def n_mul_f(p, q) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return np.array([
        p[0] + q[0],
        p[1] + q[1],
        p[2] + q[2],
        p[3] + q[3] + 0.5 * (p[1] * q[2] - p[2] * q[1]),
    ])


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

class Twist(enum.Enum):
    """t-step of the lattice family: full 2*pi, half pi, quarter pi/2."""

    FULL = "full"
    HALF = "half"
    QUARTER = "quarter"


_TWIST_QUARTERS = {Twist.FULL: 4, Twist.HALF: 2, Twist.QUARTER: 1}


@dataclass(frozen=True)
class LatticeSpec:
    """One lattice of the three twisted families over Z x Z x (1/2k)Z."""

    k: int
    twist: Twist

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("lattice parameter k must be >= 1")

    @property
    def t_step(self) -> Scalar:
        return PI_HALF * _TWIST_QUARTERS[self.twist]

    @property
    def t_step_quarters(self) -> int:
        return _TWIST_QUARTERS[self.twist]

    @property
    def z_step(self) -> Fraction:
        return Fraction(1, 2 * self.k)

    @property
    def v_step(self) -> Fraction:
        return Fraction(1)

    def generators(self) -> list[GroupElement]:
        return [
            GroupElement(self.t_step, Scalar(0), Scalar(0), Scalar(0)),
            GroupElement.of(0, (1, 0), 0),
            GroupElement.of(0, (0, 1), 0),
            GroupElement.of(0, (0, 0), self.z_step),
        ]

    @staticmethod
    def parse(text: str) -> "LatticeSpec":
        k = None
        twist = None
        for chunk in text.split(","):
            key, _, value = chunk.partition("=")
            key = key.strip().lower()
            value = value.strip().lower()
            if key == "k":
                k = int(value)
            elif key == "twist":
                try:
                    twist = Twist(value)
                except ValueError:
                    raise ValueError(f"unknown twist {value!r}") from None
            else:
                raise ValueError(f"unknown lattice field {key!r}")
        if k is None or twist is None:
            raise ValueError(f"lattice spec needs k=<int>,twist=<full|half|quarter>, got {text!r}")
        return LatticeSpec(k, twist)

    def __str__(self) -> str:
        return f"k={self.k},twist={self.twist.value}"


def lattice_contains(L: LatticeSpec, g: GroupElement) -> bool:
    """Exact membership of g in the lattice of L."""
    return (
        is_integer_multiple(g.t, L.t_step)
        and in_lattice_1d(g.x, L.v_step)
        and in_lattice_1d(g.y, L.v_step)
        and in_lattice_1d(g.z, L.z_step)
    )


def n_lattice_contains(L: LatticeSpec, g: GroupElement) -> bool:
    """Membership in the N-side lattice 2*pi*Z x Z x Z x (1/2k)Z."""
    return (
        is_integer_multiple(g.t, PI * 2)
        and in_lattice_1d(g.x, Fraction(1))
        and in_lattice_1d(g.y, Fraction(1))
        and in_lattice_1d(g.z, L.z_step)
    )


# ---------------------------------------------------------------------------
# coset normal forms and equality
# ---------------------------------------------------------------------------

def _frac_scalar(s: Scalar, step: Fraction) -> tuple[Scalar, int]:
    """Reduce s into [0, step) by an integer multiple of the rational step."""
    m = (s / Scalar(step)).floor()
    return s - Scalar(step) * m, m


def coset_normal_form(L: LatticeSpec, g: GroupElement) -> GroupElement:
    """Canonical representative of the right coset g*Lam in G/Lam.

    Reduces t into [0, t_step), then v into [0, 1)^2, then z into
    [0, 1/2k), each by a right multiplication with a lattice element.
    The t-reduction never touches v or z; the v-reduction needs the
    rotation R(t') at the reduced t', hence requires t' in (pi/2)Z
    whenever v actually moves (otherwise the result would leave Q(pi)).
    """
    # t-reduction by (-m*t_step, 0, 0): only t changes
    m = (g.t / L.t_step).floor()
    t1 = g.t - L.t_step * m
    x, y, z = g.x, g.y, g.z

    # v-reduction by (0, v_lam, 0) with R(t1) v_lam = -floor(v); the
    # correcting vector is R(-t1) of an integer shift, so t1 must be a
    # quarter angle for it to stay in the lattice
    fx = x.floor()
    fy = y.floor()
    if fx or fy:
        Rotation(-t1).quarter_index()
        shift = (Scalar(-fx), Scalar(-fy))
        z = z + _cross((x, y), shift) / 2
        x = x - Scalar(fx)
        y = y - Scalar(fy)

    # z-reduction by (0, 0, z_lam)
    z, _ = _frac_scalar(z, L.z_step)
    return GroupElement(t1, x, y, z)


def coset_equal(L: LatticeSpec, g1: GroupElement, g2: GroupElement) -> bool:
    """True iff g1*Lam = g2*Lam, via the side-consistent product g2^-1 g1."""
    return lattice_contains(L, g_mul(g_inv(g2), g1))


def n_coset_normal_form(L: LatticeSpec, g: GroupElement) -> GroupElement:
    """Canonical representative of the left coset Lam*g in Lam\\N (exact, total)."""
    t, m = _t_reduce_exact(g.t)
    x, y, z = g.x, g.y, g.z
    fx, fy = x.floor(), y.floor()
    if fx or fy:
        # left multiplication by (0, (-fx, -fy), 0): z gains cross(v_lam, v)/2
        z = z + _cross((Scalar(-fx), Scalar(-fy)), (x, y)) / 2
        x = x - Scalar(fx)
        y = y - Scalar(fy)
    z, _ = _frac_scalar(z, L.z_step)
    return GroupElement(t, x, y, z)


def _t_reduce_exact(t: Scalar) -> tuple[Scalar, int]:
    step = PI * 2
    m = (t / step).floor()
    return t - step * m, m


def n_coset_equal(L: LatticeSpec, g1: GroupElement, g2: GroupElement) -> bool:
    """True iff Lam*g1 = Lam*g2 in Lam\\N, via g1 g2^-1 in Lam."""
    return n_lattice_contains(L, n_mul(g1, n_inv(g2)))


def coset_normal_form_f(L: LatticeSpec, p, eps: float = 1e-9) -> np.ndarray:
    """Float reduction of a point to a canonical coset representative.

    t is reduced mod t_step; the v-shift is read off in the rotated-back
    chart w = R(-t') v, whose fractional part is coset-canonical for all
    three families; z is reduced mod 1/2k.  Values within eps of an upper
    box boundary snap to the lower one so that lattice-exact inputs
    reduce stably.
    """
    p = np.asarray(p, dtype=float)
    t_step = float(L.t_step)
    z_step = float(L.z_step)

    def snap_frac(value, step):
        f = value / step
        f -= math.floor(f + eps)
        if f < 0.0:
            f = 0.0
        return f * step

    t1 = snap_frac(p[0], t_step)
    v = p[1:3]
    w = rotation_f(-t1) @ v
    shift = -np.floor(w + eps)
    w_new = rotation_f(t1) @ shift
    z = p[3] + 0.5 * (v[0] * w_new[1] - v[1] * w_new[0])
    v = v + w_new
    z = snap_frac(z, z_step)
    return np.array([t1, v[0], v[1], z])


# ---------------------------------------------------------------------------
# normalizers
# ---------------------------------------------------------------------------

def _rational_or_none(s: Scalar) -> Fraction | None:
    return s.rational_value() if s.is_rational() else None


def _in_step(value: Fraction, step: Fraction) -> bool:
    return (value / step).denominator == 1


def normalizer_contains(L: LatticeSpec, h: GroupElement) -> bool:
    """Closed-form membership of h in the normalizer of the lattice in G.

    All three families require a quarter-turn t and leave z free; they
    differ in the admissible v:
      full twist:    v in (1/2k)Z x (1/2k)Z
      half twist:    v in (1/2)Z x (1/2)Z
      quarter twist: v in Z^2 for odd k, and additionally the
                     half-odd-integer coset for even k, i.e.
                     v in (1/2)W with W = {(m, n) integer, m = n mod 2}.

    The quarter rule matches conjugation of lattice generators: a
    quarter-turn conjugation of the t-generator by a half-odd-integer v
    shifts z by a quarter-integer, which lies in (1/2k)Z iff k is even.
    """
    if quarter_turns(h.t) is None:
        return False
    x = _rational_or_none(h.x)
    y = _rational_or_none(h.y)
    if x is None or y is None:
        return False
    if L.twist is Twist.FULL:
        step = Fraction(1, 2 * L.k)
        return _in_step(x, step) and _in_step(y, step)
    if L.twist is Twist.HALF:
        return _in_step(x, Fraction(1, 2)) and _in_step(y, Fraction(1, 2))
    if L.k % 2 == 0:
        sx, sy = 2 * x, 2 * y
        if sx.denominator != 1 or sy.denominator != 1:
            return False
        return (sx.numerator - sy.numerator) % 2 == 0
    return x.denominator == 1 and y.denominator == 1
