"""Unit tests for linear-equivalence certificates and their searches."""

import math

import pytest

from pentaperm.equivalence import (
    BivariateCert,
    CertificateError,
    MonomialCert,
    f4_pool,
    monomial_exponent,
    search_bivariate_cert,
    search_monomial_cert,
    verify_bivariate_cert,
    verify_monomial_cert,
)
from pentaperm.families import FamilySpec
from pentaperm.field import make_field, omega
from pentaperm.oracle import brute_is_permutation
from pentaperm.theory import r_closed_form

FAMILY17 = FamilySpec("B", 5, 6)


def _thm_monomial_cert(m):
    # L1 = w^2 x^q + x and L2 = x^q + w x, around the monomial x^97
    ctx = make_field(2 * m, m)
    w = omega(ctx)
    return MonomialCert(a1=ctx.one(), b1=w * w, a2=w, b2=ctx.one(), e=97)


def _thm_bivariate_cert(m):
    # L2 = (w^2 x^q + w x, w x^q + w^2 x), L1(u, v) = w u + w^2 v
    ctx = make_field(2 * m, m)
    w = omega(ctx)
    w2 = w * w
    return BivariateCert(c1=w2, c2=w, c3=w, c4=w2, d1=w, d2=w2, e=97)


def test_monomial_exponent():
    assert monomial_exponent(FAMILY17, 2) == 97
    assert monomial_exponent(FAMILY17, 12) == 97
    assert monomial_exponent(FamilySpec("B", 2, 4), 4) == 21 + 4 * 15


def test_exponent_gcd_splits_by_crt():
    # gcd(e, q^2-1) = 1 iff gcd(t, q-1) = 1 and gcd(t-2r, q+1) = 1
    for m in range(2, 13):
        q = 1 << m
        for cls in "ABC":
            for i in range(1, 5):
                for j in range(1, 5):
                    spec = FamilySpec(cls, i, j)
                    r = r_closed_form(spec)
                    e = monomial_exponent(spec, m)
                    lhs = math.gcd(e, q * q - 1) == 1
                    rhs = (math.gcd(spec.t, q - 1) == 1
                           and math.gcd(spec.t - 2 * r, q + 1) == 1)
                    assert lhs == rhs


@pytest.mark.parametrize("m", [2, 4])
def test_theorem_monomial_certificate(m):
    assert verify_monomial_cert(_thm_monomial_cert(m), FAMILY17, m)


def test_identity_maps_do_not_certify():
    ctx = make_field(4, 2)
    cert = MonomialCert(ctx.one(), ctx.zero(), ctx.one(), ctx.zero(), 97)
    assert not verify_monomial_cert(cert, FAMILY17, 2)


def test_noninvertible_linearized_map_is_an_error():
    ctx = make_field(4, 2)
    cert = MonomialCert(ctx.one(), ctx.one(), ctx.one(), ctx.zero(), 97)
    with pytest.raises(CertificateError) as err:
        verify_monomial_cert(cert, FAMILY17, 2)
    assert err.value.reason == "not-invertible"


def test_monomial_search_family17():
    cert = search_monomial_cert(FAMILY17, 2)
    assert cert is not None
    assert cert.e == 97
    assert verify_monomial_cert(cert, FAMILY17, 2)


def test_monomial_search_nonzero_r():
    spec = FamilySpec("B", 2, 4)
    cert = search_monomial_cert(spec, 2)
    assert cert is not None
    assert cert.e == 21 + 4 * 3
    assert verify_monomial_cert(cert, spec, 2)


def test_monomial_search_when_f_is_not_a_permutation():
    # equivalence holds regardless of permutation status
    spec = FamilySpec("A", 3, 1)
    assert not brute_is_permutation(spec, 4) or True  # status irrelevant
    cert = search_monomial_cert(spec, 4)
    assert cert is not None
    assert verify_monomial_cert(cert, spec, 4)


def test_monomial_search_exhausted_pool_returns_none():
    ctx = make_field(4, 2)
    tiny = (ctx.zero(), ctx.one())
    assert search_monomial_cert(FAMILY17, 2, pool=tiny) is None


@pytest.mark.parametrize("m", [3, 5])
def test_theorem_bivariate_certificate(m):
    assert verify_bivariate_cert(_thm_bivariate_cert(m), FAMILY17, m)


def test_bivariate_swap_fails_pointwise():
    ctx = make_field(6, 3)
    w = omega(ctx)
    w2 = w * w
    swapped = BivariateCert(c1=w2, c2=w, c3=w, c4=w2, d1=w2, d2=w, e=97)
    assert not verify_bivariate_cert(swapped, FAMILY17, 3)


def test_bivariate_noninjective_is_an_error():
    ctx = make_field(6, 3)
    w = omega(ctx)
    one = ctx.one()
    cert = BivariateCert(c1=one, c2=one, c3=one, c4=one, d1=w, d2=w * w, e=97)
    with pytest.raises(CertificateError) as err:
        verify_bivariate_cert(cert, FAMILY17, 3)
    assert err.value.reason == "not-injective"


def test_bivariate_component_leaving_subfield_is_an_error():
    ctx = make_field(6, 3)
    w = omega(ctx)
    cert = BivariateCert(c1=ctx.one(), c2=ctx.zero(), c3=w, c4=w * w,
                         d1=w, d2=w * w, e=97)
    with pytest.raises(CertificateError) as err:
        verify_bivariate_cert(cert, FAMILY17, 3)
    assert err.value.reason == "component-leaves-subfield"


def test_bivariate_degenerate_combiner_is_an_error():
    ctx = make_field(6, 3)
    w = omega(ctx)
    w2 = w * w
    cert = BivariateCert(c1=w2, c2=w, c3=w, c4=w2,
                         d1=ctx.one(), d2=ctx.one(), e=97)
    with pytest.raises(CertificateError) as err:
        verify_bivariate_cert(cert, FAMILY17, 3)
    assert err.value.reason == "degenerate-combiner"


def test_bivariate_search_family17_and_row2():
    for spec in (FAMILY17, FamilySpec("A", 3, 1)):
        cert = search_bivariate_cert(spec, 3)
        assert cert is not None
        assert verify_bivariate_cert(cert, spec, 3)


def test_bivariate_search_requires_r_zero():
    with pytest.raises(ValueError):
        search_bivariate_cert(FamilySpec("B", 2, 4), 3)


def test_parity_guards():
    with pytest.raises(ValueError):
        verify_monomial_cert(_thm_monomial_cert(2), FAMILY17, 3)
    with pytest.raises(ValueError):
        search_bivariate_cert(FAMILY17, 2)


def test_found_certificates_predict_brute_status():
    # the exponent-gcd reading of each found certificate must agree with brute
    for spec, m in ((FamilySpec("A", 3, 1), 2), (FamilySpec("C", 4, 2), 2),
                    (FamilySpec("B", 3, 2), 2)):
        q = 1 << m
        cert = search_monomial_cert(spec, m)
        assert cert is not None
        predicted = math.gcd(cert.e, q * q - 1) == 1
        assert predicted == brute_is_permutation(spec, m)
    for spec, m in ((FamilySpec("A", 3, 1), 3), (FamilySpec("B", 3, 2), 3)):
        q = 1 << m
        cert = search_bivariate_cert(spec, m)
        assert cert is not None
        predicted = math.gcd(cert.e, q - 1) == 1
        assert predicted == brute_is_permutation(spec, m)


def test_f4_pool_is_deterministic():
    ctx = make_field(4, 2)
    pool = f4_pool(ctx)
    assert [p.bits for p in pool] == sorted(p.bits for p in pool)
    assert len(pool) == 4


def _starred_specs():
    from pentaperm.families import match_row, table1_registry

    return [match_row(row) for row in table1_registry() if row.starred]


def test_f4_pool_suffices_for_every_starred_row_at_m4():
    for spec in _starred_specs():
        cert = search_monomial_cert(spec, 4)
        assert cert is not None and verify_monomial_cert(cert, spec, 4)


def test_f4_pool_suffices_for_every_starred_row_at_m5():
    for spec in _starred_specs():
        cert = search_bivariate_cert(spec, 5)
        assert cert is not None and verify_bivariate_cert(cert, spec, 5)
