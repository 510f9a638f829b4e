import random
from fractions import Fraction

import numpy as np
import pytest

from oscigeo.scalar import PI, PI_HALF, Scalar
from oscigeo.groups import (
    ExactRotationUnavailable,
    GroupElement,
    IDENTITY,
    LatticeSpec,
    Twist,
    coset_equal,
    g_inv,
    g_mul,
    n_coset_equal,
    n_coset_normal_form,
    n_mul,
)
from oscigeo.isometries import (
    IsometryOfG,
    IsotropyElement,
    NotOrthogonal,
    ad_matrix_group,
    ambrose_hicks_check,
    apply_factors,
    apply_factors_f,
    chi_f,
    discrete_isometry,
    extract_isotropy,
    f1_f,
    f2_f,
    f3_f,
    fiber_preserving,
    heis_action,
    heis_action_f,
    induced_inner_trivial,
    induced_maps_equal,
    induced_translation_trivial,
    inner_aut,
    inner_trivial_on_g,
    is_isometry_numeric,
    isotropy_matrix,
    left_translation_f,
    parse_isometry,
)

S1 = Scalar(1)
S0 = Scalar(0)
ID2 = ((S1, S0), (S0, S1))
ROT90 = ((S0, Scalar(-1)), (S1, S0))
FLIP = ((S1, S0), (S0, Scalar(-1)))
W_GRID = [(S0, S0), (S1, S0), (S1, S1)]


def rand_quarter(rng):
    return GroupElement.of(
        PI_HALF * rng.randint(-4, 4),
        (Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4))),
        Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
    )


def test_isotropy_matrix_identity():
    M = isotropy_matrix(IsotropyElement(1, ID2, (S0, S0)))
    for i in range(4):
        for j in range(4):
            assert M[i][j] == Scalar(1 if i == j else 0)


def test_isotropy_matrix_matches_group_adjoint():
    v0 = (Scalar(Fraction(1, 3)), Scalar(2))
    w = (v0[1], -v0[0])  # J v0
    el = IsotropyElement(1, ROT90, w)
    assert isotropy_matrix(el) == ad_matrix_group(PI_HALF, v0)


def test_isotropy_matrix_reflected_row_signs():
    M = isotropy_matrix(IsotropyElement(-1, ID2, (S1, S0)))
    assert M[3][0] == Scalar(Fraction(1, 2))
    assert (M[3][1], M[3][2]) == (S1, S0)
    assert M[3][3] == Scalar(-1)
    assert M[0][0] == Scalar(-1)


def test_not_orthogonal_rejected():
    with pytest.raises(NotOrthogonal):
        IsotropyElement(1, ((Scalar(2), S0), (S0, S1)), (S0, S0))
    with pytest.raises(ValueError):
        IsotropyElement(2, ID2, (S0, S0))


def test_ambrose_hicks_grid_and_extraction():
    for eps in (1, -1):
        for a_tilde in (ID2, ROT90, FLIP):
            for w in W_GRID:
                el = IsotropyElement(eps, a_tilde, w)
                A = isotropy_matrix(el)
                assert ambrose_hicks_check(A)
                assert extract_isotropy(A) == el
                assert isotropy_matrix(extract_isotropy(A)) == A


def test_ambrose_hicks_rejects_non_members():
    diag = tuple(
        tuple(Scalar(2 if i == j == 0 else (1 if i == j else 0)) for j in range(4)) for i in range(4)
    )
    assert not ambrose_hicks_check(diag)
    # perturb one entry of a family member
    A = [list(row) for row in isotropy_matrix(IsotropyElement(1, ROT90, (S1, S0)))]
    A[3][1] = A[3][1] + 1
    assert not ambrose_hicks_check(tuple(tuple(r) for r in A))


def test_inner_aut_is_conjugation():
    rng = random.Random(0)
    for _ in range(50):
        g, x = rand_quarter(rng), rand_quarter(rng)
        assert inner_aut(g, x) == g_mul(g, g_mul(x, g_inv(g)))


def test_inner_aut_identity_and_center():
    x = GroupElement.of(PI, (1, 2), 3)
    assert inner_aut(IDENTITY, x) == x
    assert inner_aut(GroupElement.of(0, (0, 0), Fraction(7, 2)), x) == x
    assert inner_aut(GroupElement.of(2 * PI, (0, 0), 0), x) == x


def test_inner_aut_float_matches_exact():
    rng = random.Random(1)
    for _ in range(30):
        g, x = rand_quarter(rng), rand_quarter(rng)
        exact = inner_aut(g, x).to_float()
        approx = chi_f(g.to_float(), x.to_float())
        assert np.max(np.abs(exact - approx)) < 1e-12


def test_inner_kernel_pattern():
    assert inner_trivial_on_g(GroupElement.of(2 * PI, (0, 0), Fraction(5, 3)))
    assert inner_trivial_on_g(GroupElement.of(-4 * PI, (0, 0), PI))
    assert not inner_trivial_on_g(GroupElement.of(PI, (0, 0), 0))
    assert not inner_trivial_on_g(GroupElement.of(2 * PI, (1, 0), 0))


def test_discrete_isometry_formulas():
    p = GroupElement.of(1, (2, 3), 4)
    assert discrete_isometry("f1", p) == GroupElement.of(-1, (-2, 3), -4)
    q = GroupElement.of(PI_HALF, (1, 0), Fraction(1, 2))
    # f2 rotates by R(-t): R(-pi/2)(1,0) = (0,-1)
    assert discrete_isometry("f2", q) == GroupElement.of(-PI_HALF, (0, -1), Fraction(-1, 2))
    # f3 = (t, R(t) S v, z): R(pi/2) S (1,0) = R(pi/2)(-1,0) = (0,-1)
    assert discrete_isometry("f3", q) == GroupElement.of(PI_HALF, (0, -1), Fraction(1, 2))
    with pytest.raises(ExactRotationUnavailable):
        discrete_isometry("f2", p)
    with pytest.raises(ValueError):
        discrete_isometry("f9", p)


def test_f3_equals_f1_after_f2():
    rng = np.random.default_rng(2)
    for _ in range(100):
        p = rng.uniform(-4, 4, 4)
        assert np.max(np.abs(f3_f(p) - f1_f(f2_f(p)))) < 1e-12
    # and exactly at quarter angles
    r = random.Random(3)
    for _ in range(20):
        q = rand_quarter(r)
        assert discrete_isometry("f3", q) == discrete_isometry("f1", discrete_isometry("f2", q))


def test_discrete_isometries_are_involutions_fixing_identity():
    rng = np.random.default_rng(4)
    for f in (f1_f, f2_f, f3_f):
        assert np.max(np.abs(f(np.zeros(4)))) == 0.0
        for _ in range(20):
            p = rng.uniform(-3, 3, 4)
            assert np.max(np.abs(f(f(p)) - p)) < 1e-12


def test_is_isometry_numeric_certifies_known_maps():
    assert is_isometry_numeric(lambda p: p)
    for f in (f1_f, f2_f, f3_f):
        assert is_isometry_numeric(f)
    rng = np.random.default_rng(5)
    for _ in range(5):
        g = rng.uniform(-3, 3, 4)
        assert is_isometry_numeric(lambda p: chi_f(g, p))
        assert is_isometry_numeric(left_translation_f(g))
        vp = rng.uniform(-3, 3, 2)
        zp = float(rng.uniform(-3, 3))
        assert is_isometry_numeric(lambda p: heis_action_f(vp, zp, p))
    assert not is_isometry_numeric(lambda p: 2 * p, samples=5)


def test_conjugation_covariance():
    rng = random.Random(6)
    for _ in range(30):
        g, h, x = (rand_quarter(rng) for _ in range(3))
        lhs = inner_aut(g, g_mul(h, inner_aut(g_inv(g), x)))
        rhs = g_mul(inner_aut(g, h), x)
        assert lhs == rhs


def test_chi_differential_at_identity_is_adjoint():
    g = GroupElement.of(PI_HALF, (Fraction(1, 2), 1), 2)
    Ad = ad_matrix_group(g.t, g.v)
    Ad_f = np.array([[float(Ad[i][j]) for j in range(4)] for i in range(4)])
    gf = g.to_float()
    step = 1e-6
    jac = np.empty((4, 4))
    for i in range(4):
        e = np.zeros(4)
        e[i] = step
        jac[:, i] = (chi_f(gf, e) - chi_f(gf, -e)) / (2 * step)
    assert np.max(np.abs(jac - Ad_f)) < 1e-6


def test_heis_action_examples():
    p = GroupElement.of(PI_HALF, (Fraction(1, 3), 2), Fraction(5, 4))
    assert heis_action(((S0, S0), S0), p) == p
    vp = (Scalar(Fraction(2, 3)), S1)
    zp = Scalar(Fraction(1, 5))
    # the action is right translation by the inverse of (0, v', z')
    assert heis_action((vp, zp), p) == g_mul(p, g_inv(GroupElement.of(0, vp, zp)))


def test_heis_action_axiom_float():
    rng = np.random.default_rng(7)
    for _ in range(50):
        v1, v2 = rng.uniform(-2, 2, 2), rng.uniform(-2, 2, 2)
        z1, z2 = rng.uniform(-2, 2, 2)
        p = rng.uniform(-2, 2, 4)
        lhs = heis_action_f(v1, z1, heis_action_f(v2, z2, p))
        pv = v1 + v2
        pz = z1 + z2 + 0.5 * (v1[0] * v2[1] - v1[1] * v2[0])
        rhs = heis_action_f(pv, pz, p)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_heis_action_descends_to_nilmanifold():
    rng = random.Random(8)
    for k in (1, 2):
        L = LatticeSpec(k, Twist.FULL)
        for _ in range(20):
            p = rand_quarter(rng)
            vp = (Scalar(Fraction(rng.randint(-4, 4), 3)), Scalar(rng.randint(-2, 2)))
            zp = Scalar(Fraction(rng.randint(-4, 4), 5))
            for gamma in L.generators():
                moved = heis_action((vp, zp), n_mul(gamma, p))
                base = heis_action((vp, zp), p)
                assert n_coset_equal(L, moved, base)
                assert n_coset_normal_form(L, moved) == n_coset_normal_form(L, base)


def test_fiber_preserving():
    L10 = LatticeSpec(1, Twist.FULL)
    L1H = LatticeSpec(1, Twist.HALF)
    assert fiber_preserving(L10, IsometryOfG(translation=GroupElement.of(PI / 3, (1, 2), 3)))
    assert fiber_preserving(L1H, IsometryOfG(inner=GroupElement.of(PI_HALF, (Fraction(1, 2), 0), 0)))
    assert not fiber_preserving(L1H, IsometryOfG(inner=GroupElement.of(PI / 3, (0, 0), 0)))
    assert not fiber_preserving(L10, IsometryOfG(tag="f1"))
    assert not fiber_preserving(L10, IsometryOfG(inner=IDENTITY, tag="f3"))
    assert fiber_preserving(L10, IsometryOfG())


def test_induced_kernels():
    L10 = LatticeSpec(1, Twist.FULL)
    L2Q = LatticeSpec(2, Twist.QUARTER)
    assert induced_inner_trivial(GroupElement.of(2 * PI, (0, 0), Fraction(9, 7)))
    assert not induced_inner_trivial(GroupElement.of(PI, (0, 0), 0))
    assert induced_translation_trivial(L10, GroupElement.of(2 * PI, (0, 0), Fraction(3, 2)))
    assert not induced_translation_trivial(L10, GroupElement.of(2 * PI, (0, 0), Fraction(1, 3)))
    assert induced_translation_trivial(L2Q, GroupElement.of(-2 * PI, (0, 0), Fraction(1, 4)))
    assert not induced_translation_trivial(L2Q, GroupElement.of(PI, (0, 0), 0))


def test_induced_maps_equal_on_cosets():
    L10 = LatticeSpec(1, Twist.FULL)
    rng = random.Random(9)
    points = [rand_quarter(rng) for _ in range(12)]
    ident = IsometryOfG()
    # translation by a lattice-central element acts trivially on cosets
    tau = IsometryOfG(translation=GroupElement.of(2 * PI, (0, 0), Fraction(1, 2)))
    assert induced_maps_equal(L10, tau, ident, points)
    # translation by a z-step outside (1/2k)Z does not
    tau_bad = IsometryOfG(translation=GroupElement.of(0, (0, 0), Fraction(1, 3)))
    assert not induced_maps_equal(L10, tau_bad, ident, points)
    # inner automorphism by a kernel-pattern element is trivial on cosets
    chi = IsometryOfG(inner=GroupElement.of(2 * PI, (0, 0), 5))
    assert induced_maps_equal(L10, chi, ident, points)


def test_kernel_predicates_match_induced_equality_on_grid():
    L10 = LatticeSpec(1, Twist.FULL)
    rng = random.Random(10)
    points = [rand_quarter(rng) for _ in range(10)]
    ident = IsometryOfG()
    for t_j in (0, 2, 4):
        for v in ((0, 0), (Fraction(1, 2), 0)):
            for z in (Fraction(0), Fraction(1, 2), Fraction(1, 3)):
                h = GroupElement.of(PI_HALF * t_j, v, z)
                tau = IsometryOfG(translation=h)
                assert induced_maps_equal(L10, tau, ident, points) == induced_translation_trivial(
                    L10, h
                )


def test_parse_isometry_descriptors():
    factors = parse_isometry("L(pi; 1, 0; 1/2) * chi(pi/2; 1, 0; 0) * f1")
    assert len(factors) == 3
    assert factors[0].translation == GroupElement.of(PI, (1, 0), Fraction(1, 2))
    assert factors[1].inner == GroupElement.of(PI_HALF, (1, 0), 0)
    assert factors[2].tag == "f1"
    p = GroupElement.of(0, (1, 1), 0)
    out = apply_factors(factors, p)
    manual = g_mul(
        GroupElement.of(PI, (1, 0), Fraction(1, 2)),
        inner_aut(GroupElement.of(PI_HALF, (1, 0), 0), discrete_isometry("f1", p)),
    )
    assert out == manual
    assert np.max(np.abs(apply_factors_f(factors, p.to_float()) - out.to_float())) < 1e-12
    with pytest.raises(ValueError):
        parse_isometry("f7")
    with pytest.raises(ValueError):
        parse_isometry("")


def test_single_factor_descriptor_forms():
    [lf] = parse_isometry("L(0; 0, 0; 1)")
    assert lf.translation == GroupElement.of(0, (0, 0), 1)
    [f2] = parse_isometry("f2")
    assert f2.tag == "f2" and str(f2) == "f2"
