"""Exact classification of geodesic periodicity on the compact quotients.

A geodesic from the identity with direction X closes on the quotient by
a lattice Lam iff exp(T X) lands in Lam for some T > 0, and on these
homogeneous spaces closed geodesics are automatically periodic.  The
classifier decides existence of such a T exactly, over Q(pi).

For a0 = 0 the exponential is a straight line and each nonzero
component confines T to a one-dimensional lattice c_i Z; the solution
set is their intersection, which is nonempty iff all ratios c_i/c_j are
rational, and the minimal period is the generator of the intersection.

For a0 != 0 the t-coordinate forces T = t_step m / |a0| with m a
positive integer.  The rotation R(a0 T) and sin(a0 T) then depend only
on m modulo the residue cycle (1, 2 or 4 residues for the full, half
and quarter families), where both are exact constants.  Per residue the
middle-coordinate condition is a constant rational-integrality test and
the z-condition has the form A m - B in Z with A, B in Q(pi); that
membership is solved exactly:

  * A and B rational: a linear congruence via extended gcd, combined
    with the residue constraint by CRT, giving an arithmetic
    progression of admissible m;
  * A rational, B irrational: no solution;
  * A irrational: at most one m can make A m - B rational; it is found
    (or ruled out) by matching polynomial coefficients.

The minimal period is the minimum over residues.  Scanning T values can
never prove non-closedness; this residue arithmetic can.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geodesics import closed_form_batch, exp_map
from .groups import (
    GroupElement,
    LatticeSpec,
    coset_normal_form_f,
    g_mul_f,
    lattice_contains,
)
from .metric import CausalType, TangentVector, causal_type
from .scalar import Scalar

__all__ = [
    "VerdictKind",
    "PeriodicityVerdict",
    "classify_geodesic",
    "minimal_period",
    "project_geodesic",
    "verdict_to_json",
    "rotation_residue_table",
]

# sin/cos of j quarter turns
_QSIN = (0, 1, 0, -1)
_QCOS = (1, 0, -1, 0)


class VerdictKind(enum.Enum):
    PERIODIC = "periodic"
    NON_CLOSED = "non-closed"
    STATIONARY_POINT = "stationary-point"


@dataclass(frozen=True)
class PeriodicityVerdict:
    kind: VerdictKind
    minimal_T: Scalar | None = None
    witness_m: int | None = None


def verdict_to_json(causal: CausalType, verdict: PeriodicityVerdict) -> dict:
    return {
        "causal": causal.value,
        "kind": verdict.kind.value,
        "minimal_T": None if verdict.minimal_T is None else str(verdict.minimal_T),
        "witness_m": verdict.witness_m,
    }


# ---------------------------------------------------------------------------
# residue table: R(a0 T) J - J and sin(a0 T) per residue of m
# ---------------------------------------------------------------------------

def rotation_residue_table(L: LatticeSpec, a0_sign: int):
    """(M_r, s_r) for each residue r of m modulo the family cycle.

    With T = t_step m / |a0| the angle a0 T equals sign(a0) * t_step * m,
    i.e. sign(a0) * q * m quarter turns with q = t_step / (pi/2).  Both
    R(a0 T) J - J and sin(a0 T) depend on m only through
    j = (sign(a0) * q * m) mod 4.  Entries are exact Fractions.
    """
    q = L.t_step_quarters
    cycle = 4 // q
    table = []
    for r in range(cycle):
        j = (a0_sign * q * r) % 4
        c, s = _QCOS[j], _QSIN[j]
        m_r = (
            (Fraction(s), Fraction(c - 1)),
            (Fraction(1 - c), Fraction(s)),
        )
        table.append((m_r, Fraction(s)))
    return table


# ---------------------------------------------------------------------------
# integer membership solving
# ---------------------------------------------------------------------------

def _solve_congruence(P: int, U: int, L: int) -> tuple[int, int] | None:
    """m with P m = U (mod L); returns (m0, modulus) or None."""
    g = math.gcd(P, L)
    if U % g:
        return None
    L2 = L // g
    if L2 == 1:
        return (0, 1)
    P2 = (P // g) % L2
    U2 = (U // g) % L2
    return ((U2 * pow(P2, -1, L2)) % L2, L2)


def _combine_crt(a1: int, n1: int, a2: int, n2: int) -> tuple[int, int] | None:
    """m = a1 (mod n1) and m = a2 (mod n2); (m0, lcm) or None."""
    g = math.gcd(n1, n2)
    if (a2 - a1) % g:
        return None
    lcm = n1 * n2 // g
    n2g = n2 // g
    if n2g == 1:
        return (a1 % lcm, lcm)
    t = ((a2 - a1) // g * pow((n1 // g) % n2g, -1, n2g)) % n2g
    return ((a1 + n1 * t) % lcm, lcm)


def _first_at_least_one(m0: int, modulus: int) -> int:
    m = m0 % modulus
    return m if m >= 1 else m + modulus


def _solve_rational(A: Fraction, B: Fraction, r: int, cycle: int) -> int | None:
    """Least m >= 1 with A m - B integer and m = r (mod cycle)."""
    if A == 0:
        if B.denominator != 1:
            return None
        return _first_at_least_one(r, cycle)
    L = (A.denominator * B.denominator) // math.gcd(A.denominator, B.denominator)
    P = A.numerator * (L // A.denominator)
    U = B.numerator * (L // B.denominator)
    sol = _solve_congruence(P, U, L)
    if sol is None:
        return None
    combined = _combine_crt(sol[0], sol[1], r, cycle)
    if combined is None:
        return None
    return _first_at_least_one(*combined)


def _pad(coeffs, n):
    return [coeffs[i] if i < len(coeffs) else Fraction(0) for i in range(n)]


def _solve_irrational(A: Scalar, B: Scalar, r: int, cycle: int) -> int | None:
    """Least admissible m when A is irrational: at most one candidate.

    A m - B can be rational for at most one rational m, because A is
    irrational.  Writing A = P/D and B = Q/D over a common denominator,
    A m - B integer means P(x) m - Q(x) = rho D(x) as polynomials for an
    integer rho; the coefficient rows form a linear system in (m, rho)
    solved by Cramer's rule and verified row by row.
    """
    from .scalar import _pmul  # dense polynomial product

    P = _pmul(A.num, B.den)
    Q = _pmul(B.num, A.den)
    D = _pmul(A.den, B.den)
    n = max(len(P), len(Q), len(D))
    Pp, Qp, Dp = _pad(P, n), _pad(Q, n), _pad(D, n)
    pivot = None
    for i in range(n):
        for j in range(i + 1, n):
            det = Dp[i] * Pp[j] - Pp[i] * Dp[j]
            if det != 0:
                pivot = (i, j, det)
                break
        if pivot:
            break
    if pivot is None:
        # P proportional to D would make A rational; unreachable here
        return None
    i, j, det = pivot
    m_hat = (Dp[i] * Qp[j] - Qp[i] * Dp[j]) / det
    rho = (Pp[i] * Qp[j] - Qp[i] * Pp[j]) / det
    for p, d, q in zip(Pp, Dp, Qp):
        if p * m_hat - rho * d != q:
            return None
    if m_hat.denominator != 1 or rho.denominator != 1:
        return None
    m = m_hat.numerator
    if m < 1 or m % cycle != r % cycle:
        return None
    return m


def _solve_membership(A: Scalar, B: Scalar, r: int, cycle: int) -> int | None:
    """Least m >= 1 with A m - B in Z and m = r (mod cycle), exactly."""
    if A.is_rational():
        if not B.is_rational():
            return None
        return _solve_rational(A.rational_value(), B.rational_value(), r, cycle)
    return _solve_irrational(A, B, r, cycle)


# ---------------------------------------------------------------------------
# the classifier
# ---------------------------------------------------------------------------

def _is_integer_scalar(s: Scalar) -> bool:
    return s.is_rational() and s.rational_value().denominator == 1


def _classify_line(L: LatticeSpec, X: TangentVector) -> PeriodicityVerdict:
    """a0 = 0: exp(TX) = (0, a1 T, a2 T, a3 T); intersect the step lattices."""
    constraints: list[Scalar] = []
    steps = (Fraction(1), Fraction(1), L.z_step)
    for a, step in zip((X.a1, X.a2, X.a3), steps):
        if not a.is_zero():
            constraints.append(Scalar(step) / abs(a))
    generator: Scalar | None = None
    for c in constraints:
        if generator is None:
            generator = c
            continue
        ratio = c / generator
        if not ratio.is_rational():
            return PeriodicityVerdict(VerdictKind.NON_CLOSED)
        generator = generator * ratio.rational_value().numerator
    assert generator is not None  # a nonzero X has at least one constraint
    return PeriodicityVerdict(VerdictKind.PERIODIC, minimal_T=generator)


def _classify_rotating(L: LatticeSpec, X: TangentVector) -> PeriodicityVerdict:
    """a0 != 0: solve the per-residue membership conditions in m."""
    a0, a1, a2, a3 = X.components
    sigma = a0.sign()
    abs_a0 = abs(a0)
    h = Scalar(L.z_step)
    t_step = L.t_step
    sq = a1 * a1 + a2 * a2
    norm_sq = X.norm_sq()
    # z(T) = (|X|^2 / 2 a0) T - (sq / 2 a0^2) sin(a0 T), T = t_step m / |a0|
    A = norm_sq * t_step / (2 * a0 * abs_a0) / h
    table = rotation_residue_table(L, sigma)
    cycle = len(table)
    best: int | None = None
    for r, (m_rot, s_r) in enumerate(table):
        u1 = (m_rot[0][0] * a1 + m_rot[0][1] * a2) / a0
        u2 = (m_rot[1][0] * a1 + m_rot[1][1] * a2) / a0
        if not (_is_integer_scalar(u1) and _is_integer_scalar(u2)):
            continue
        B = sq * s_r / (2 * a0 * a0) / h
        m = _solve_membership(A, B, r, cycle)
        if m is not None and (best is None or m < best):
            best = m
    if best is None:
        return PeriodicityVerdict(VerdictKind.NON_CLOSED)
    T = t_step * best / abs_a0
    return PeriodicityVerdict(VerdictKind.PERIODIC, minimal_T=T, witness_m=best)


def classify_geodesic(L: LatticeSpec, X: TangentVector) -> tuple[CausalType, PeriodicityVerdict]:
    """Causal type plus an exact periodicity verdict for the direction X."""
    causal = causal_type(X)
    if X.is_zero():
        return causal, PeriodicityVerdict(VerdictKind.STATIONARY_POINT)
    if X.a0.is_zero():
        return causal, _classify_line(L, X)
    return causal, _classify_rotating(L, X)


def minimal_period(L: LatticeSpec, X: TangentVector, verify: bool = True) -> Scalar | None:
    """The minimal period, or None when the geodesic never closes.

    With verify=True a Periodic verdict is confirmed exactly: exp(T X)
    must lie in the lattice and no admissible T' < T may, scanning the
    t-step multiples (a0 != 0) or the single-coordinate period lattices
    (a0 = 0).
    """
    causal, verdict = classify_geodesic(L, X)
    if verdict.kind is not VerdictKind.PERIODIC:
        return None
    T = verdict.minimal_T
    if not verify:
        return T
    if not lattice_contains(L, exp_map(X.scale(T))):
        raise AssertionError(f"verdict T = {T} fails exact lattice membership")
    if verdict.witness_m is not None:
        abs_a0 = abs(X.a0)
        for m in range(1, verdict.witness_m):
            T_smaller = L.t_step * m / abs_a0
            if lattice_contains(L, exp_map(X.scale(T_smaller))):
                raise AssertionError(f"smaller admissible period {T_smaller} exists")
    else:
        steps = (Fraction(1), Fraction(1), L.z_step)
        for a, step in zip((X.a1, X.a2, X.a3), steps):
            if a.is_zero():
                continue
            unit = Scalar(step) / abs(a)
            j = 1
            while (unit * j - T).sign() < 0:
                if lattice_contains(L, exp_map(X.scale(unit * j))):
                    raise AssertionError(f"smaller admissible period {unit * j} exists")
                j += 1
    return T


def project_geodesic(
    L: LatticeSpec,
    h: GroupElement,
    X: TangentVector,
    s_end: float,
    step: float,
) -> np.ndarray:
    """Float samples (s, t, x, y, z) of the quotient-reduced geodesic.

    Each sample is h exp(sX) reduced to the canonical coset
    representative; trace output only, never used for decisions.
    """
    from .geodesics import InvalidStep

    if step <= 0:
        raise InvalidStep(f"sampling step must be positive, got {step}")
    n = max(int(round(s_end / step)), 0)
    base = h.to_float()
    a = X.to_float()[None, :]
    rows = np.empty((n + 1, 5))
    for i in range(n + 1):
        s = i * step
        point = g_mul_f(base, closed_form_batch(a, s)[0])
        rows[i, 0] = s
        rows[i, 1:5] = coset_normal_form_f(L, point)
    return rows
