"""The isometry group of the oscillator group and its verification tools.

Every isometry factors as a left translation composed with an isometry
fixing the identity.  The isotropy group has four connected components:
the identity component consists of the inner automorphisms chi_g, and
representatives of the other three are the involutions

    f1(t, v, z) = (-t, S v, -z)          with S(x, y) = (-x, y),
    f2(t, v, z) = (-t, R(-t) v, -z),
    f3 = f1 o f2:  (t, R(t) S v, z).

Differentials at the identity of isotropy isometries form a block
family: a00 = a33 = eps in {1, -1}, an orthogonal 2x2 block A~ acting on
(a1, a2), a column w, and a last row (-eps |w|^2/2, -eps w^T A~, eps).
The inner automorphisms are exactly the eps = +1, det A~ = +1 members,
where the matrix is Ad(t, v) with A~ = R(t) and w = J v.

A candidate differential is certified by the locally-symmetric-space
criterion: it must preserve the frame Gram matrix and commute with the
double bracket, A[[X, Y], Z] = [[AX, AY], AZ]; both checks are finite
and exact by multilinearity.  Maps themselves are certified numerically
by pulling the coordinate metric back through a finite-difference
Jacobian.

The Heisenberg group acts isometrically by

    (v', z') . (t, v, z) = (t, v - R(t) v', z - z' - v^T J R(t) v' / 2),

which is exactly right translation by (0, v', z')^{-1}; it descends to
the nilmanifold quotients.  On a solvmanifold quotient of G, the only
isotropy isometries that preserve lattice cosets are the inner chi_h
with h in the normalizer of the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .groups import (
    GroupElement,
    LatticeSpec,
    Rotation,
    g_inv,
    g_mul,
    g_mul_f,
    normalizer_contains,
    parse_group_element,
    rotation_f,
)
from .metric import (
    FRAME_GRAM,
    TangentVector,
    bracket,
    frame_inner,
    metric_matrix_f,
)
from .scalar import PI, Scalar, in_lattice_1d, is_integer_multiple

__all__ = [
    "NotOrthogonal",
    "IsotropyElement",
    "IsometryOfG",
    "isotropy_matrix",
    "extract_isotropy",
    "ambrose_hicks_check",
    "ad_matrix_group",
    "inner_aut",
    "chi_f",
    "discrete_isometry",
    "f1_f",
    "f2_f",
    "f3_f",
    "is_isometry_numeric",
    "fiber_preserving",
    "heis_action",
    "heis_action_f",
    "inner_trivial_on_g",
    "induced_inner_trivial",
    "induced_translation_trivial",
    "induced_maps_equal",
    "parse_isometry",
    "left_translation_f",
]

Matrix4 = tuple[tuple[Scalar, ...], ...]


class NotOrthogonal(ValueError):
    """The 2x2 block of an isotropy element is not orthogonal."""


@dataclass(frozen=True)
class IsotropyElement:
    """Parameters (eps, A~, w) of an isotropy differential."""

    eps: int
    a_tilde: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    w: tuple[Scalar, Scalar]

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        (a, b), (c, d) = self.a_tilde
        checks = (
            a * a + c * c == Scalar(1),
            b * b + d * d == Scalar(1),
            (a * b + c * d).is_zero(),
        )
        if not all(checks):
            raise NotOrthogonal(f"2x2 block {self.a_tilde} is not orthogonal")


def isotropy_matrix(el: IsotropyElement) -> Matrix4:
    """Assemble the 4x4 differential of an isotropy isometry in the frame."""
    zero = Scalar(0)
    eps = Scalar(el.eps)
    (a, b), (c, d) = el.a_tilde
    w1, w2 = el.w
    norm_sq = w1 * w1 + w2 * w2
    # w^T A~ row vector
    wa1 = w1 * a + w2 * c
    wa2 = w1 * b + w2 * d
    return (
        (eps, zero, zero, zero),
        (w1, a, b, zero),
        (w2, c, d, zero),
        (-eps * norm_sq / 2, -eps * wa1, -eps * wa2, eps),
    )


def extract_isotropy(A: Matrix4) -> IsotropyElement:
    """Read (eps, A~, w) back off a matrix in the isotropy block family."""
    eps_s = A[0][0]
    if eps_s == Scalar(1):
        eps = 1
    elif eps_s == Scalar(-1):
        eps = -1
    else:
        raise NotOrthogonal(f"corner entry {eps_s} is not +-1")
    a_tilde = ((A[1][1], A[1][2]), (A[2][1], A[2][2]))
    w = (A[1][0], A[2][0])
    return IsotropyElement(eps, a_tilde, w)


def ad_matrix_group(t: Scalar, v: tuple[Scalar, Scalar]) -> Matrix4:
    """Ad(t, v) of the group: A~ = R(t) (exact quarter angle), w = J v."""
    rot = Rotation(t).matrix()
    a_tilde = (
        (Scalar(rot[0][0]), Scalar(rot[0][1])),
        (Scalar(rot[1][0]), Scalar(rot[1][1])),
    )
    w = (v[1], -v[0])  # J v with J = [[0, 1], [-1, 0]]
    return isotropy_matrix(IsotropyElement(1, a_tilde, w))


# ---------------------------------------------------------------------------
# exact certification of differentials
# ---------------------------------------------------------------------------

_FRAME = (
    TangentVector.of(1, 0, 0, 0),
    TangentVector.of(0, 1, 0, 0),
    TangentVector.of(0, 0, 1, 0),
    TangentVector.of(0, 0, 0, 1),
)


def _column(A: Matrix4, j: int) -> TangentVector:
    return TangentVector(A[0][j], A[1][j], A[2][j], A[3][j])


def _apply(A: Matrix4, X: TangentVector) -> TangentVector:
    comps = X.components
    out = []
    for i in range(4):
        acc = Scalar(0)
        for j in range(4):
            acc = acc + A[i][j] * comps[j]
        out.append(acc)
    return TangentVector(*out)


def ambrose_hicks_check(A: Matrix4) -> bool:
    """Exact test that A is the differential of an isometry fixing e.

    Checks metric preservation <AX, AY> = <X, Y> on frame pairs and the
    double-bracket equivariance A[[X, Y], Z] = [[AX, AY], AZ] on frame
    triples; multilinearity makes the finite check complete.
    """
    cols = [_column(A, j) for j in range(4)]
    for i in range(4):
        for j in range(i, 4):
            if frame_inner(cols[i], cols[j]) != FRAME_GRAM[i][j]:
                return False
    for i in range(4):
        for j in range(4):
            inner = bracket(_FRAME[i], _FRAME[j])
            img = bracket(cols[i], cols[j])
            for k in range(4):
                lhs = _apply(A, bracket(inner, _FRAME[k]))
                rhs = bracket(img, cols[k])
                if lhs != rhs:
                    return False
    return True


# ---------------------------------------------------------------------------
# inner automorphisms
# ---------------------------------------------------------------------------

def inner_aut(g: GroupElement, x: GroupElement) -> GroupElement:
    """chi_g(x) = g x g^{-1}, via the expanded conjugation formula."""
    rot0 = Rotation(g.t)
    rot = Rotation(x.t)
    r0v = rot0.apply(x.v)
    rv0 = rot.apply(g.v)
    v = (g.x + r0v[0] - rv0[0], g.y + r0v[1] - rv0[1])
    z = (
        x.z
        + _cross(g.v, r0v) / 2
        - _cross(g.v, rv0) / 2
        - _cross(r0v, rv0) / 2
    )
    return GroupElement(x.t, v[0], v[1], z)


def _cross(v, w) -> Scalar:
    return v[0] * w[1] - v[1] * w[0]


def chi_f(g, x) -> np.ndarray:
    """Float conjugation chi_g(x) for arbitrary angles."""
    g = np.asarray(g, dtype=float)
    x = np.asarray(x, dtype=float)
    r0v = rotation_f(g[0]) @ x[1:3]
    rv0 = rotation_f(x[0]) @ g[1:3]
    v = g[1:3] + r0v - rv0
    z = (
        x[3]
        + 0.5 * (g[1] * r0v[1] - g[2] * r0v[0])
        - 0.5 * (g[1] * rv0[1] - g[2] * rv0[0])
        - 0.5 * (r0v[0] * rv0[1] - r0v[1] * rv0[0])
    )
    return np.array([x[0], v[0], v[1], z])


def inner_trivial_on_g(g: GroupElement) -> bool:
    """chi_g is the identity map iff g = (2 pi s, 0, z): the center of G."""
    return (
        is_integer_multiple(g.t, PI * 2)
        and g.x.is_zero()
        and g.y.is_zero()
    )


# ---------------------------------------------------------------------------
# the discrete components
# ---------------------------------------------------------------------------

def discrete_isometry(which: str, p: GroupElement) -> GroupElement:
    """Exact f1, f2 or f3; f2 and f3 need a quarter-turn t."""
    if which == "f1":
        return GroupElement(-p.t, -p.x, p.y, -p.z)
    if which == "f2":
        w = Rotation(-p.t).apply(p.v)
        return GroupElement(-p.t, w[0], w[1], -p.z)
    if which == "f3":
        w = Rotation(p.t).apply((-p.x, p.y))
        return GroupElement(p.t, w[0], w[1], p.z)
    raise ValueError(f"unknown discrete isometry {which!r}")


def f1_f(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return np.array([-p[0], -p[1], p[2], -p[3]])


def f2_f(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    w = rotation_f(-p[0]) @ p[1:3]
    return np.array([-p[0], w[0], w[1], -p[3]])


def f3_f(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    w = rotation_f(p[0]) @ np.array([-p[1], p[2]])
    return np.array([p[0], w[0], w[1], p[3]])


_DISCRETE_F = {"f1": f1_f, "f2": f2_f, "f3": f3_f}


def left_translation_f(g) -> Callable[[np.ndarray], np.ndarray]:
    g = np.asarray(g, dtype=float)
    return lambda p: g_mul_f(g, p)


# ---------------------------------------------------------------------------
# numeric certification of point maps
# ---------------------------------------------------------------------------

def is_isometry_numeric(
    point_map: Callable[[np.ndarray], np.ndarray],
    samples: int = 50,
    seed: int = 0,
    tol: float = 1e-6,
    fd_step: float = 1e-6,
    box: float = 2.0,
) -> bool:
    """Pull the metric back through a central-difference Jacobian.

    True iff J^T G(f(p)) J matches G(p) entrywise within tol at every
    sampled point.
    """
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        p = rng.uniform(-box, box, 4)
        jac = np.empty((4, 4))
        for i in range(4):
            e = np.zeros(4)
            e[i] = fd_step
            jac[:, i] = (point_map(p + e) - point_map(p - e)) / (2 * fd_step)
        pulled = jac.T @ metric_matrix_f(point_map(p)) @ jac
        if np.max(np.abs(pulled - metric_matrix_f(p))) > tol:
            return False
    return True


# ---------------------------------------------------------------------------
# the Heisenberg action
# ---------------------------------------------------------------------------

def heis_action(h: tuple[tuple[Scalar, Scalar], Scalar], p: GroupElement) -> GroupElement:
    """(v', z') . (t, v, z) = (t, v - R(t)v', z - z' - v^T J R(t) v' / 2)."""
    vp, zp = h
    w = Rotation(p.t).apply(vp)
    return GroupElement(
        p.t,
        p.x - w[0],
        p.y - w[1],
        p.z - zp - _cross(p.v, w) / 2,
    )


def heis_action_f(vp, zp: float, p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    w = rotation_f(p[0]) @ np.asarray(vp, dtype=float)
    return np.array([
        p[0],
        p[1] - w[0],
        p[2] - w[1],
        p[3] - zp - 0.5 * (p[1] * w[1] - p[2] * w[0]),
    ])


# ---------------------------------------------------------------------------
# isometries of G in normal form, quotient predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsometryOfG:
    """L_g o chi_h o f_tag with tag in {id, f1, f2, f3}; factors optional."""

    translation: GroupElement | None = None
    inner: GroupElement | None = None
    tag: str = "id"

    def __post_init__(self):
        if self.tag not in ("id", "f1", "f2", "f3"):
            raise ValueError(f"unknown component tag {self.tag!r}")

    def apply(self, p: GroupElement) -> GroupElement:
        out = p
        if self.tag != "id":
            out = discrete_isometry(self.tag, out)
        if self.inner is not None:
            out = inner_aut(self.inner, out)
        if self.translation is not None:
            out = g_mul(self.translation, out)
        return out

    def apply_f(self, p) -> np.ndarray:
        out = np.asarray(p, dtype=float)
        if self.tag != "id":
            out = _DISCRETE_F[self.tag](out)
        if self.inner is not None:
            out = chi_f(self.inner.to_float(), out)
        if self.translation is not None:
            out = g_mul_f(self.translation.to_float(), out)
        return out

    def __str__(self) -> str:
        parts = []
        if self.translation is not None:
            parts.append(f"L{self.translation}")
        if self.inner is not None:
            parts.append(f"chi{self.inner}")
        if self.tag != "id":
            parts.append(self.tag)
        return " * ".join(parts) if parts else "id"


def fiber_preserving(L: LatticeSpec, iso: IsometryOfG) -> bool:
    """Whether iso maps lattice cosets to lattice cosets.

    Left translations always do; an inner factor chi_h does iff h lies in
    the normalizer of the lattice; the discrete components never do.
    """
    if iso.tag != "id":
        return False
    if iso.inner is not None:
        return normalizer_contains(L, iso.inner)
    return True


def induced_inner_trivial(h: GroupElement) -> bool:
    """chi_h acts trivially on every quotient iff h = (2 pi s, 0, r)."""
    return inner_trivial_on_g(h)


def induced_translation_trivial(L: LatticeSpec, h: GroupElement) -> bool:
    """tau_h is trivial on G/Lam iff h = (2 pi s, 0, z) with z in (1/2k)Z."""
    return (
        is_integer_multiple(h.t, PI * 2)
        and h.x.is_zero()
        and h.y.is_zero()
        and in_lattice_1d(h.z, L.z_step)
    )


def induced_maps_equal(
    L: LatticeSpec,
    iso1: IsometryOfG,
    iso2: IsometryOfG,
    points: Sequence[GroupElement],
) -> bool:
    """Equality of the induced quotient maps on the given coset samples."""
    from .groups import coset_equal

    return all(coset_equal(L, iso1.apply(p), iso2.apply(p)) for p in points)


# ---------------------------------------------------------------------------
# descriptor parsing: "L(t;x,y;z)", "chi(t;x,y;z)", "f1|f2|f3" joined by "*"
# ---------------------------------------------------------------------------

def _split_top_level(text: str, sep: str) -> list[str]:
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def parse_isometry(text: str) -> list[IsometryOfG]:
    """Parse a composition descriptor into factors, outermost first.

    The factors compose by function application in the listed order:
    apply the last factor first.
    """
    factors = []
    for chunk in _split_top_level(text, "*"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty factor in isometry descriptor {text!r}")
        if chunk in ("f1", "f2", "f3"):
            factors.append(IsometryOfG(tag=chunk))
        elif chunk.startswith("L"):
            factors.append(IsometryOfG(translation=parse_group_element(chunk[1:])))
        elif chunk.startswith("chi"):
            factors.append(IsometryOfG(inner=parse_group_element(chunk[3:])))
        else:
            raise ValueError(f"unknown isometry factor {chunk!r}")
    return factors


def apply_factors(factors: Sequence[IsometryOfG], p: GroupElement) -> GroupElement:
    out = p
    for factor in reversed(factors):
        out = factor.apply(out)
    return out


def apply_factors_f(factors: Sequence[IsometryOfG], p) -> np.ndarray:
    out = np.asarray(p, dtype=float)
    for factor in reversed(factors):
        out = factor.apply_f(out)
    return out
