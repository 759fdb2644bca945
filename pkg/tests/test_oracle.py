"""Unit tests for the brute-force oracles: sweeps, g on the circle,
ramification, and the degree-one-map classification procedures."""

import pytest

from conftest import all_specs
from pentaperm.families import FamilySpec
from pentaperm.field import make_field, omega, unit_circle
from pentaperm.gf2poly import BinPoly
from pentaperm.oracle import (
    INFINITY,
    DegreeOneMap,
    RationalMap,
    branch_points,
    branch_points_of_map,
    brute_is_permutation,
    critical_point_residual,
    deg1_bijects_mu,
    deg1_bijects_mu_by_enumeration,
    deg1_mu_to_p1,
    deg1_mu_to_p1_by_enumeration,
    g_eval,
    g_map,
    g_permutes_unit_circle,
    monomials_permute,
    ramification_index,
    ramification_profile,
)
from pentaperm.theory import theorem_verdict


def test_squaring_is_a_permutation():
    for n in (2, 4, 6):
        assert monomials_permute(n, [2])


def test_cube_on_gf4_is_not():
    assert not monomials_permute(2, [3])


def test_monomials_permute_validation():
    with pytest.raises(ValueError):
        monomials_permute(30, [2])
    with pytest.raises(ValueError):
        monomials_permute(4, [0])


def test_brute_row2_at_m2():
    assert brute_is_permutation(FamilySpec("A", 3, 1), 2)


def test_brute_cap():
    with pytest.raises(ValueError):
        brute_is_permutation(FamilySpec("A", 1, 1), 13)


def test_brute_agrees_with_verdict_spot():
    for m in (1, 2, 3, 4):
        for spec in all_specs(3):
            assert brute_is_permutation(spec, m) == theorem_verdict(spec, m).predicted


def test_brute_above_table_threshold():
    # n = 18 exercises the tableless sweep path, and its canonical field is
    # one where the residue class of x is not primitive
    from pentaperm.field import make_field

    assert make_field(18).generator() != 2
    spec = FamilySpec("B", 5, 6)
    assert brute_is_permutation(spec, 9) == theorem_verdict(spec, 9).predicted


def test_brute_equals_three_part_criterion():
    # permutation iff gcd(t, q-1) = 1, H root-free on the circle, and g
    # a bijection of the circle
    import math

    from pentaperm.theory import h_unit_roots_exist

    for m in range(1, 6):
        q = 1 << m
        for spec in all_specs(3):
            parts = (math.gcd(spec.t, q - 1) == 1
                     and not h_unit_roots_exist(spec, m)
                     and g_permutes_unit_circle(spec, m))
            assert brute_is_permutation(spec, m) == parts


def test_g_fixes_one():
    for m in (2, 3):
        ctx = make_field(2 * m, m)
        for spec in all_specs(3):
            assert g_eval(spec, ctx, ctx.one()) == ctx.one()


def test_g_maps_circle_into_circle_row2():
    ctx = make_field(4, 2)
    spec = FamilySpec("A", 3, 1)
    circle = set(unit_circle(ctx))
    for x in unit_circle(ctx):
        assert g_eval(spec, ctx, x) in circle


def test_reduced_denominator_nonvanishing_on_circle():
    ctx = make_field(8, 4)
    spec = FamilySpec("B", 2, 4)
    for x in unit_circle(ctx):
        assert g_eval(spec, ctx, x) is not INFINITY


def test_g_permutes_circle_examples():
    assert g_permutes_unit_circle(FamilySpec("A", 3, 1), 2)
    assert g_permutes_unit_circle(FamilySpec("A", 3, 1), 5)


def test_g_permutes_circle_large_even_m():
    # m = 12: the even-branch criterion is gcd(97, 2^12 + 1) = 1
    import math

    spec = FamilySpec("B", 5, 6)
    expected = math.gcd(97, (1 << 12) + 1) == 1
    assert g_permutes_unit_circle(spec, 12) == expected


def test_g_permutes_cap():
    with pytest.raises(ValueError):
        g_permutes_unit_circle(FamilySpec("A", 1, 1), 21)


def test_ramification_of_pure_cube_at_zero():
    ctx = make_field(4, 2)
    cube = RationalMap.make(BinPoly(0b1000), BinPoly(1))
    assert ramification_index(cube, ctx.zero(), ctx) == 3


def test_ramification_at_omega_row2():
    ctx = make_field(4, 2)
    g = g_map(FamilySpec("A", 3, 1))
    assert ramification_index(g, omega(ctx), ctx) == 11


def test_degree_one_maps_are_unramified():
    ctx = make_field(4, 2)
    w = omega(ctx)
    rho = RationalMap.make(BinPoly(0b10), BinPoly(0b11))  # x / (x + 1)
    for bits in range(16):
        assert ramification_index(rho, ctx.elem(bits), ctx) == 1
    assert ramification_index(rho, INFINITY, ctx) == 1
    one_map = DegreeOneMap(w, ctx.one(), ctx.zero(), ctx.one())
    assert one_map.eval(INFINITY) is INFINITY


def test_branch_set_row2():
    ctx = make_field(4, 2)
    w = omega(ctx)
    assert branch_points(FamilySpec("A", 3, 1), ctx) == {w, w * w}


def test_branch_set_of_degree_one_map_empty():
    ctx = make_field(4, 2)
    rho = RationalMap.make(BinPoly(0b10), BinPoly(0b11))
    assert branch_points_of_map(rho, ctx) == set()


def test_branch_set_of_squaring_is_everything():
    # x -> x^2 is inseparable: every point is critical, hence every point
    # (including infinity) is a branch point
    ctx = make_field(4, 2)
    sq = RationalMap.make(BinPoly(0b100), BinPoly(1))
    expected = {ctx.elem(b) for b in range(16)} | {INFINITY}
    assert branch_points_of_map(sq, ctx) == expected


def test_ramification_profile_row2():
    ctx = make_field(4, 2)
    w = omega(ctx)
    profile = ramification_profile(FamilySpec("A", 3, 1), ctx)
    assert profile == {w: [11], w * w: [11]}


def test_profile_fiber_sums_reach_degree_over_branch_points():
    # over each branch point the whole fiber sits in the concrete field,
    # so the indices must sum to deg g = t - 2r
    for m in (2, 3):
        ctx = make_field(2 * m, m)
        for spec in all_specs(3):
            g = g_map(spec)
            for beta, idxs in ramification_profile(spec, ctx).items():
                assert sum(idxs) == g.degree


def test_residual_vanishes_at_omega():
    ctx = make_field(4, 2)
    g = g_map(FamilySpec("A", 3, 1))
    w = omega(ctx)
    assert critical_point_residual(g, w, ctx) == ctx.zero()


def test_residual_nonzero_at_an_unramified_point():
    ctx = make_field(4, 2)
    g = g_map(FamilySpec("A", 3, 1))
    hit = False
    for bits in range(16):
        point = ctx.elem(bits)
        if ramification_index(g, point, ctx) == 1:
            if critical_point_residual(g, point, ctx) != ctx.zero():
                hit = True
                break
    assert hit


def test_residual_of_degree_one_map_is_determinant():
    # for x / (x + 1): N'D + ND' = (x + 1) + x = 1 = ad + bc everywhere
    ctx = make_field(4, 2)
    rho = RationalMap.make(BinPoly(0b10), BinPoly(0b11))
    for bits in range(16):
        assert critical_point_residual(rho, ctx.elem(bits), ctx) == ctx.one()


def test_residual_vanishes_wherever_ramified():
    for m in (2, 3):
        ctx = make_field(2 * m, m)
        for spec in all_specs(3):
            g = g_map(spec)
            for bits in range(1 << ctx.n):
                point = ctx.elem(bits)
                if ramification_index(g, point, ctx) > 1:
                    assert critical_point_residual(g, point, ctx) == ctx.zero()


# -- degree-one map classifications ---------------------------------------------------

def _some_non_circle_element(ctx):
    circle = {e.bits for e in unit_circle(ctx)}
    for bits in range(2, 1 << ctx.n):
        if bits not in circle:
            return ctx.elem(bits)
    raise AssertionError


def _some_non_subfield_element(ctx):
    for bits in range(2, 1 << ctx.n):
        if ctx.frob_q(bits) != bits:
            return ctx.elem(bits)
    raise AssertionError


@pytest.mark.parametrize("m", [2, 3])
def test_deg1_circle_classification_examples(m):
    ctx = make_field(2 * m, m)
    beta = unit_circle(ctx)[1]
    gamma = _some_non_circle_element(ctx)
    from pentaperm.field import frobenius_q

    scaling = DegreeOneMap(beta, ctx.zero(), ctx.zero(), ctx.one())
    assert deg1_bijects_mu(scaling, ctx)
    off_circle = DegreeOneMap(gamma, ctx.zero(), ctx.zero(), ctx.one())
    assert not deg1_bijects_mu(off_circle, ctx)
    case2 = DegreeOneMap(ctx.one(), frobenius_q(gamma) * beta, gamma, beta)
    assert deg1_bijects_mu(case2, ctx)
    inversion = DegreeOneMap(ctx.zero(), beta, ctx.one(), ctx.zero())
    assert deg1_bijects_mu(inversion, ctx)


@pytest.mark.parametrize("m", [2, 3])
def test_deg1_projective_classification_examples(m):
    ctx = make_field(2 * m, m)
    from pentaperm.field import frobenius_q

    beta = unit_circle(ctx)[1]
    delta = _some_non_subfield_element(ctx)
    good = DegreeOneMap(delta, beta * frobenius_q(delta), ctx.one(), beta)
    assert deg1_mu_to_p1(good, ctx)
    assert deg1_mu_to_p1_by_enumeration(good, ctx)
    identity = DegreeOneMap(ctx.one(), ctx.zero(), ctx.zero(), ctx.one())
    assert not deg1_mu_to_p1(identity, ctx)
    # delta inside the base field collapses the determinant: the putative
    # map (delta x + beta delta^q)/(x + beta) is not even degree one
    in_subfield = next(ctx.elem(b) for b in range(2, 1 << ctx.n)
                       if ctx.frob_q(b) == b)
    with pytest.raises(ValueError):
        DegreeOneMap(in_subfield, beta * frobenius_q(in_subfield), ctx.one(), beta)
    # a nondegenerate near miss (wrong numerator constant) fails both ways
    wrong_b = beta * frobenius_q(delta) + ctx.one()
    near_miss = DegreeOneMap(delta, wrong_b, ctx.one(), beta)
    assert not deg1_mu_to_p1(near_miss, ctx)
    assert not deg1_mu_to_p1_by_enumeration(near_miss, ctx)


def test_deg1_procedures_agree_with_enumeration(rng):
    total = 0
    for m in (2, 3, 4):
        ctx = make_field(2 * m, m)
        size = 1 << ctx.n
        while True:
            a, b, c, d = (rng.randrange(size) for _ in range(4))
            if ctx.mul(a, d) ^ ctx.mul(b, c) == 0:
                continue
            rho = DegreeOneMap(*(ctx.elem(v) for v in (a, b, c, d)))
            assert deg1_bijects_mu(rho, ctx) == deg1_bijects_mu_by_enumeration(rho, ctx)
            assert deg1_mu_to_p1(rho, ctx) == deg1_mu_to_p1_by_enumeration(rho, ctx)
            total += 1
            if total % 334 == 0:
                break
    assert total >= 1000


def test_degenerate_deg1_map_rejected():
    ctx = make_field(4, 2)
    with pytest.raises(ValueError):
        DegreeOneMap(ctx.one(), ctx.one(), ctx.one(), ctx.one())
