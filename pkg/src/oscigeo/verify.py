"""Named verification suites over the whole engine.

Each suite re-derives a family of identities from independent machinery
(brute-force enumeration, finite differences, the RK4 integrator, float
re-evaluation) and checks the exact layer against it.  The CLI ``verify``
command and the acceptance tests both run these; results are
deterministic for a fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import geodesics, isometries
from .groups import (
    GroupElement,
    IDENTITY,
    LatticeSpec,
    Twist,
    coset_equal,
    coset_normal_form,
    g_inv,
    g_mul,
    g_mul_f,
    lattice_contains,
    n_mul,
    normalizer_contains,
)
from .metric import (
    CausalType,
    FRAME_GRAM,
    TangentVector,
    bracket,
    causal_type,
    curvature_op,
    e_frame_f,
    frame_inner,
    killing_form,
    metric_matrix_f,
    ricci,
    ricci_from_curvature_trace,
    x_frame_f,
)
from .quotients import VerdictKind, classify_geodesic
from .scalar import PI_HALF, Scalar, parse_scalar

__all__ = ["SuiteResult", "SUITES", "run_suites", "suite_names"]


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)


def _rand_fraction(rng: random.Random, span: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def _rand_scalar(rng: random.Random, max_deg: int = 3) -> Scalar:
    while True:
        num = [_rand_fraction(rng) for _ in range(rng.randint(1, max_deg + 1))]
        den = [_rand_fraction(rng) for _ in range(rng.randint(1, max_deg + 1))]
        if any(den):
            return Scalar(tuple(num), tuple(den))


def _rand_quarter_element(rng: random.Random) -> GroupElement:
    return GroupElement.of(
        PI_HALF * rng.randint(-4, 4),
        (_rand_fraction(rng), _rand_fraction(rng)),
        _rand_fraction(rng),
    )


# ---------------------------------------------------------------------------
# scalar suite
# ---------------------------------------------------------------------------

def suite_scalar(rng: random.Random) -> SuiteResult:
    res = SuiteResult("scalar")
    one = Scalar(1)
    for _ in range(150):
        a, b, c = (_rand_scalar(rng) for _ in range(3))
        res.check((a + b) + c == a + (b + c), "addition associativity")
        res.check((a * b) * c == a * (b * c), "multiplication associativity")
        res.check(a * (b + c) == a * b + a * c, "distributivity")
        if not a.is_zero():
            res.check(a * (one / a) == one, "multiplicative inverse")
        res.check(Scalar(a.num, a.den) == a, "canonical form idempotent")
        res.check(parse_scalar(str(a)) == a, f"text round-trip of {a}")
    for _ in range(100):
        a = _rand_scalar(rng, 2)
        b = _rand_scalar(rng, 2)
        fa, fb, fab = float(a), float(b), float(a * b)
        if abs(fa) > 1e6 or abs(fb) > 1e6:
            continue
        bound = 1e-10 * max(1.0, abs(fa * fb))
        res.check(abs(fab - fa * fb) <= bound, "float view is multiplicative")
    for _ in range(60):
        step = Fraction(rng.randint(1, 6), rng.randint(1, 6))
        s = Scalar(step * rng.randint(-8, 8))
        m = rng.randint(-5, 5)
        from .scalar import in_lattice_1d

        res.check(in_lattice_1d(s, step), "multiples belong to their lattice")
        res.check(in_lattice_1d(s * m, step), "integer multiples stay in lattice")
    return res


# ---------------------------------------------------------------------------
# groups suite
# ---------------------------------------------------------------------------

def suite_groups(rng: random.Random) -> SuiteResult:
    res = SuiteResult("groups")
    for _ in range(80):
        a, b, c = (_rand_quarter_element(rng) for _ in range(3))
        res.check(g_mul(g_mul(a, b), c) == g_mul(a, g_mul(b, c)), "G associativity")
        res.check(n_mul(n_mul(a, b), c) == n_mul(a, n_mul(b, c)), "N associativity")
        res.check(g_mul(a, g_inv(a)) == IDENTITY, "right inverse")
        res.check(g_mul(g_inv(a), a) == IDENTITY, "left inverse")
        flat = GroupElement(Scalar(0), a.x, a.y, a.z)
        res.check(g_mul(flat, b) == n_mul(flat, b), "G and N laws agree at t = 0")
        ff = np.abs(g_mul(a, b).to_float() - g_mul_f(a.to_float(), b.to_float()))
        res.check(float(np.max(ff)) < 1e-9, "exact vs float product")
    for L in (LatticeSpec(1, Twist.FULL), LatticeSpec(2, Twist.QUARTER)):
        for _ in range(40):
            g = _rand_quarter_element(rng)
            nf = coset_normal_form(L, g)
            res.check(coset_equal(L, nf, g), "normal form stays in the coset")
            box_ok = (
                Scalar(0) <= nf.t < L.t_step
                and Scalar(0) <= nf.x < Scalar(1)
                and Scalar(0) <= nf.y < Scalar(1)
                and Scalar(0) <= nf.z < Scalar(L.z_step)
            )
            res.check(box_ok, "normal form lies in the fundamental box")
            g2 = _rand_quarter_element(rng)
            same = coset_equal(L, g, g2)
            res.check(
                same == (coset_normal_form(L, g) == coset_normal_form(L, g2)),
                "coset equality matches normal-form equality",
            )
    return res


# ---------------------------------------------------------------------------
# normalizer suite: closed form vs conjugation of generators on the grid
# ---------------------------------------------------------------------------

def _normalizer_grid():
    quarters = [PI_HALF * j for j in range(5)]
    vs = [Fraction(i, 4) for i in range(5)]
    zs = [Fraction(0), Fraction(1, 4)]
    for t in quarters:
        for vx in vs:
            for vy in vs:
                for z in zs:
                    yield GroupElement.of(t, (vx, vy), z)


def suite_normalizer(rng: random.Random) -> SuiteResult:
    res = SuiteResult("normalizer")
    for k in (1, 2):
        for twist in Twist:
            L = LatticeSpec(k, twist)
            gens = L.generators()
            for h in _normalizer_grid():
                oracle = all(
                    lattice_contains(L, isometries.inner_aut(h, gamma)) for gamma in gens
                )
                res.check(
                    normalizer_contains(L, h) == oracle,
                    f"normalizer predicate vs oracle at {h} on {L}",
                )
    return res


# ---------------------------------------------------------------------------
# metric and curvature suites
# ---------------------------------------------------------------------------

_FRAME = (
    TangentVector.of(1, 0, 0, 0),
    TangentVector.of(0, 1, 0, 0),
    TangentVector.of(0, 0, 1, 0),
    TangentVector.of(0, 0, 0, 1),
)


def suite_metric(rng: random.Random) -> SuiteResult:
    res = SuiteResult("metric")
    nprng = np.random.default_rng(rng.randint(0, 2**31))
    target = np.array([[float(v) for v in row] for row in FRAME_GRAM])
    for _ in range(100):
        p = nprng.uniform(-3, 3, 4)
        G = metric_matrix_f(p)
        for frame in (x_frame_f(p), e_frame_f(p)):
            gram = frame.T @ G @ frame
            res.check(
                float(np.max(np.abs(gram - target))) < 1e-12,
                "coordinate metric matches the frame Gram matrix",
            )
    for _ in range(5):
        p = nprng.uniform(-3, 3, 4)
        eigs = np.linalg.eigvalsh(metric_matrix_f(p))
        res.check(
            int(np.sum(eigs > 0)) == 3 and int(np.sum(eigs < 0)) == 1,
            "signature (3,1)",
        )
    for _ in range(100):
        X = TangentVector(*(_rand_scalar(rng, 1) for _ in range(4)))
        res.check(
            ricci(X, X) == X.a0 * X.a0 / 2,
            "Ricci quadratic form equals a0^2/2",
        )
    for i, Xi in enumerate(_FRAME):
        for j, Xj in enumerate(_FRAME):
            expected = Scalar(Fraction(1, 2)) if i == j == 0 else Scalar(0)
            res.check(ricci(Xi, Xj) == expected, "Ricci matrix entries")
    return res


def suite_curvature(rng: random.Random) -> SuiteResult:
    res = SuiteResult("curvature")
    for Xa in _FRAME:
        for Xb in _FRAME:
            for Xc in _FRAME:
                skew = frame_inner(bracket(Xa, Xb), Xc) + frame_inner(Xb, bracket(Xa, Xc))
                res.check(skew.is_zero(), "ad-skew-symmetry of the metric")
                s = (
                    curvature_op(Xa, Xb, Xc)
                    .add(curvature_op(Xb, Xc, Xa))
                    .add(curvature_op(Xc, Xa, Xb))
                )
                res.check(s.is_zero(), "first Bianchi identity")
                anti = curvature_op(Xa, Xb, Xc).add(curvature_op(Xb, Xa, Xc))
                res.check(anti.is_zero(), "R(X,Y) = -R(Y,X)")
                for Xd in _FRAME:
                    pair = frame_inner(curvature_op(Xa, Xb, Xc), Xd) + frame_inner(
                        curvature_op(Xa, Xb, Xd), Xc
                    )
                    res.check(pair.is_zero(), "<R(X,Y)Z,W> = -<R(X,Y)W,Z>")
    for Xa in _FRAME:
        for Xb in _FRAME:
            res.check(
                ricci_from_curvature_trace(Xa, Xb) == ricci(Xa, Xb),
                "curvature-trace Ricci equals Killing-form Ricci",
            )
            res.check(
                ricci(Xa, Xb) == killing_form(Xa, Xb) * Fraction(-1, 4),
                "Ricci is -B/4",
            )
    return res


# ---------------------------------------------------------------------------
# geodesics suite: closed form vs RK4, conservation, left invariance
# ---------------------------------------------------------------------------

def suite_geodesics(
    rng: random.Random,
    n_directions: int = 50,
    s_end: float = 10.0,
    step: float = 1e-4,
    sup_tol: float = 1e-7,
    drift_tol: float = 1e-8,
) -> SuiteResult:
    res = SuiteResult("geodesics")
    nprng = np.random.default_rng(rng.randint(0, 2**31))
    dirs = nprng.uniform(-2, 2, (n_directions, 4))
    states = np.array([geodesics.initial_state(IDENTITY, a) for a in dirs])
    n = int(round(s_end / step))
    speed0 = _batch_speed(states)
    tracker = {"sup": 0.0, "drift": 0.0}

    def observer(i, state):
        s = i * step
        cf = geodesics.closed_form_batch(dirs, s)
        tracker["sup"] = max(tracker["sup"], float(np.max(np.abs(state[:, :4] - cf))))
        if i % 200 == 0 or i == n:
            sp = _batch_speed(state)
            rel = np.abs(sp - speed0) / np.maximum(1.0, np.abs(speed0))
            tracker["drift"] = max(tracker["drift"], float(np.max(rel)))

    geodesics.rk4_states(states, n, step, observer)
    sup, drift = tracker["sup"], tracker["drift"]
    res.check(sup <= sup_tol, f"closed form vs RK4 sup deviation {sup:.3e}")
    res.check(drift <= drift_tol, f"speed drift {drift:.3e}")

    for _ in range(100):
        a = nprng.uniform(-2, 2, 4)
        if abs(a[0]) < 0.05:
            a[0] = float(nprng.uniform(0.1, 2))
        diff = np.max(np.abs(geodesics.exp_map_f(a) - geodesics.exp_map_packed_f(a)))
        res.check(float(diff) < 1e-12, "packed exp form matches componentwise form")

    for _ in range(20):
        a = nprng.uniform(-2, 2, 4)
        s, u = nprng.uniform(-2, 2, 2)
        lhs = g_mul_f(geodesics.exp_map_f(a, s), geodesics.exp_map_f(a, u))
        rhs = geodesics.exp_map_f(a, s + u)
        res.check(float(np.max(np.abs(lhs - rhs))) < 1e-10, "one-parameter subgroup law")

    for _ in range(5):
        h = nprng.uniform(-2, 2, 4)
        a = nprng.uniform(-2, 2, 4)
        direct = geodesics.rk4_states(geodesics.initial_state(h, a), 2000, 1e-4)
        from_e = geodesics.rk4_states(geodesics.initial_state(np.zeros(4), a), 2000, 1e-4)
        diff = np.max(np.abs(direct[:4] - g_mul_f(h, from_e[:4])))
        res.check(float(diff) < 1e-12, "left invariance of the integrated geodesic")
    return res


def _batch_speed(states: np.ndarray) -> np.ndarray:
    pos = states[:, 0:4]
    vel = states[:, 4:8]
    x, y = pos[:, 1], pos[:, 2]
    vt, vx, vy, vz = vel.T
    # v^T G(p) v expanded from the coordinate metric
    return vx * vx + vy * vy + vt * (y * vx - x * vy) + 2 * vt * vz


# ---------------------------------------------------------------------------
# isometries suite
# ---------------------------------------------------------------------------

def suite_isometries(rng: random.Random, samples: int = 50, tol: float = 1e-6) -> SuiteResult:
    res = SuiteResult("isometries")
    nprng = np.random.default_rng(rng.randint(0, 2**31))
    seed = rng.randint(0, 2**31)

    named = [
        ("f1", isometries.f1_f),
        ("f2", isometries.f2_f),
        ("f3", isometries.f3_f),
    ]
    for i in range(20):
        g = nprng.uniform(-3, 3, 4)
        named.append((f"chi_{i}", lambda p, g=g: isometries.chi_f(g, p)))
        h = nprng.uniform(-3, 3, 4)
        named.append((f"L_{i}", isometries.left_translation_f(h)))
        vp = nprng.uniform(-3, 3, 2)
        zp = float(nprng.uniform(-3, 3))
        named.append((f"heis_{i}", lambda p, vp=vp, zp=zp: isometries.heis_action_f(vp, zp, p)))
    for name, point_map in named:
        res.check(
            isometries.is_isometry_numeric(point_map, samples=samples, seed=seed, tol=tol),
            f"{name} passes the numeric metric-pullback test",
        )
    res.check(
        not isometries.is_isometry_numeric(lambda p: 2 * p, samples=10, seed=seed, tol=tol),
        "the doubling map fails the pullback test",
    )

    grid_atilde = [
        ((Scalar(1), Scalar(0)), (Scalar(0), Scalar(1))),
        ((Scalar(0), Scalar(-1)), (Scalar(1), Scalar(0))),
        ((Scalar(1), Scalar(0)), (Scalar(0), Scalar(-1))),
    ]
    grid_w = [
        (Scalar(0), Scalar(0)),
        (Scalar(1), Scalar(0)),
        (Scalar(1), Scalar(1)),
    ]
    for eps in (1, -1):
        for a_tilde in grid_atilde:
            for w in grid_w:
                el = isometries.IsotropyElement(eps, a_tilde, w)
                A = isometries.isotropy_matrix(el)
                res.check(isometries.ambrose_hicks_check(A), "isotropy family passes the differential test")
                res.check(
                    isometries.isotropy_matrix(isometries.extract_isotropy(A)) == A,
                    "extraction reassembles the matrix exactly",
                )
    bad = tuple(
        tuple(Scalar(2 if i == j == 0 else (1 if i == j else 0)) for j in range(4))
        for i in range(4)
    )
    res.check(not isometries.ambrose_hicks_check(bad), "diag(2,1,1,1) is rejected")

    for _ in range(30):
        g = _rand_quarter_element(rng)
        h = _rand_quarter_element(rng)
        x = _rand_quarter_element(rng)
        res.check(
            isometries.inner_aut(g, x) == g_mul(g, g_mul(x, g_inv(g))),
            "conjugation formula equals the product route",
        )
        lhs = isometries.inner_aut(g, g_mul(h, isometries.inner_aut(g_inv(g), x)))
        rhs = g_mul(isometries.inner_aut(g, h), x)
        res.check(lhs == rhs, "chi_g L_h chi_g^-1 = L_{chi_g(h)}")

    # kernel of the conjugation homomorphism on a grid
    for t_j in range(-2, 3):
        for vx in (Fraction(0), Fraction(1, 2)):
            for z in (Fraction(0), Fraction(3, 2)):
                g = GroupElement.of(PI_HALF * t_j, (vx, 0), z)
                trivial = all(
                    isometries.inner_aut(g, x) == x
                    for x in (_rand_quarter_element(rng) for _ in range(6))
                )
                res.check(
                    trivial == isometries.inner_trivial_on_g(g),
                    f"conjugation kernel at {g}",
                )
    return res


# ---------------------------------------------------------------------------
# quotients suite
# ---------------------------------------------------------------------------

def _families(ks=(1, 2, 3)):
    return [LatticeSpec(k, twist) for k in ks for twist in Twist]


def _random_null_direction(rng: random.Random, allow_line: bool = True) -> TangentVector:
    if allow_line and rng.random() < 0.1:
        a3 = _rand_fraction(rng)
        if a3 == 0:
            a3 = Fraction(1)
        return TangentVector.of(0, 0, 0, a3)
    a0 = Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice([-1, 1])
    a1 = _rand_fraction(rng)
    a2 = _rand_fraction(rng)
    a3 = -(a1 * a1 + a2 * a2) / (2 * a0)
    return TangentVector.of(a0, a1, a2, a3)


def suite_quotients(rng: random.Random, per_family: int = 60) -> SuiteResult:
    res = SuiteResult("quotients")
    for L in _families():
        for _ in range(per_family):
            X = _random_null_direction(rng)
            causal, verdict = classify_geodesic(L, X)
            res.check(causal is CausalType.NULL, "construction yields null directions")
            res.check(verdict.kind is VerdictKind.PERIODIC, f"null direction non-periodic on {L}")
            if verdict.kind is VerdictKind.PERIODIC:
                member = lattice_contains(L, geodesics.exp_map(X.scale(verdict.minimal_T)))
                res.check(member, "periodic verdict verified by exact membership")

    for _ in range(40):
        a = [
            Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice([-1, 1]),
            _rand_fraction(rng),
            _rand_fraction(rng),
            _rand_fraction(rng),
        ]
        X = TangentVector.of(*a)
        if X.norm_sq().is_zero():
            continue
        for L in _families(ks=(1, 2)):
            _, verdict = classify_geodesic(L, X)
            res.check(
                verdict.kind is VerdictKind.NON_CLOSED,
                "spacelike/timelike rational directions never close",
            )

    # lattice chain: periods on coarser-to-finer families divide each other
    for k in (1, 2):
        for _ in range(40):
            X = _random_null_direction(rng)
            periods = []
            for twist in (Twist.FULL, Twist.HALF, Twist.QUARTER):
                _, verdict = classify_geodesic(LatticeSpec(k, twist), X)
                res.check(verdict.kind is VerdictKind.PERIODIC, "null periodic in chain")
                periods.append(verdict.minimal_T)
            for big, small in zip(periods, periods[1:]):
                ratio = big / small
                res.check(
                    ratio.is_rational() and ratio.rational_value().denominator == 1,
                    "finer-family period divides the coarser one",
                )

    # closed implies periodic, with the classifier consistent
    L = LatticeSpec(1, Twist.FULL)
    for _ in range(20):
        X = _random_null_direction(rng, allow_line=False)
        _, verdict = classify_geodesic(L, X)
        abs_a0 = abs(X.a0)
        times = [L.t_step * m / abs_a0 for m in range(0, 4)]
        hits = []
        for i, s0 in enumerate(times):
            for s1 in times[i + 1:]:
                p0 = geodesics.exp_map(X.scale(s0))
                p1 = geodesics.exp_map(X.scale(s1))
                if coset_equal(L, p0, p1):
                    gap = s1 - s0
                    hits.append(gap)
                    res.check(
                        lattice_contains(L, geodesics.exp_map(X.scale(gap))),
                        "coset return implies lattice membership of the gap",
                    )
                    ratio = gap / verdict.minimal_T
                    res.check(
                        ratio.is_rational() and ratio.rational_value().denominator == 1,
                        "minimal period divides every return gap",
                    )
        res.check(bool(hits), "periodic geodesics revisit cosets at step times")
    return res


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[[random.Random], SuiteResult]] = {
    "scalar": suite_scalar,
    "groups": suite_groups,
    "normalizer": suite_normalizer,
    "metric": suite_metric,
    "curvature": suite_curvature,
    "geodesics": suite_geodesics,
    "isometries": suite_isometries,
    "quotients": suite_quotients,
}


def suite_names() -> list[str]:
    return list(SUITES)


def run_suites(names: list[str] | None = None, seed: int = 0) -> list[SuiteResult]:
    selected = suite_names() if names is None else names
    results = []
    for name in selected:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
        results.append(SUITES[name](random.Random(seed)))
    return results
