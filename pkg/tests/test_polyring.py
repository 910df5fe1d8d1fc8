import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gcquat.cyclotomy import generate_sequence
from gcquat.errors import BothZero, ModulusMismatch, PolyDivisionByZero
from gcquat.modnum import validate_params
from gcquat.polyring import (
    FieldPoly, generating_polynomial, generating_polynomial_structured, poly_add, poly_divmod,
    poly_from_roots, poly_gcd, poly_gcd_euclid, poly_mul, poly_mul_fast, poly_mul_schoolbook,
    poly_powmod, poly_rem, poly_sub,
)

MODULI = [5, 7, 13, 10007]


@st.composite
def polys(draw, modulus=None, max_len=300):
    r = modulus or draw(st.sampled_from(MODULI))
    n = draw(st.integers(0, max_len))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return FieldPoly(rng.integers(0, r, n), r)


@st.composite
def poly_pairs(draw, max_len=300):
    r = draw(st.sampled_from(MODULI))
    return draw(polys(r, max_len)), draw(polys(r, max_len))


@settings(max_examples=60, deadline=None)
@given(poly_pairs(max_len=600))
def test_fast_mul_matches_schoolbook(ab):
    a, b = ab
    assert poly_mul_fast(a, b) == poly_mul_schoolbook(a, b)
    assert poly_mul(a, b) == poly_mul(b, a)


@settings(max_examples=60, deadline=None)
@given(poly_pairs())
def test_add_sub_inverse(ab):
    a, b = ab
    assert poly_sub(poly_add(a, b), b) == a


@settings(max_examples=80, deadline=None)
@given(poly_pairs(max_len=500))
def test_divmod_identity(ab):
    a, b = ab
    if b.is_zero():
        with pytest.raises(PolyDivisionByZero):
            poly_divmod(a, b)
        return
    quo, rem = poly_divmod(a, b)
    assert rem.is_zero() or rem.degree < b.degree
    assert quo * b + rem == a
    assert poly_rem(a, b) == rem


@settings(max_examples=60, deadline=None)
@given(poly_pairs(max_len=500))
def test_gcd_matches_euclid_and_divides(ab):
    a, b = ab
    if a.is_zero() and b.is_zero():
        with pytest.raises(BothZero):
            poly_gcd(a, b)
        return
    g = poly_gcd(a, b)
    assert g == poly_gcd_euclid(a, b)
    assert g[g.degree] == 1
    assert poly_rem(a, g).is_zero() and poly_rem(b, g).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(MODULI), st.integers(0, 2**32 - 1))
def test_gcd_recovers_planted_factor(r, seed):
    rng = np.random.default_rng(seed)
    common = FieldPoly(list(rng.integers(0, r, 40)) + [1], r)
    a = common * FieldPoly(list(rng.integers(0, r, 200)) + [1], r)
    b = common * FieldPoly(list(rng.integers(0, r, 150)) + [1], r)
    g = poly_gcd(a, b)
    assert poly_rem(g, common.monic()).is_zero()
    assert g.degree >= common.degree


def test_gcd_of_roots_products():
    r = 13
    a = poly_from_roots([1, 2, 3, 5], r)
    b = poly_from_roots([2, 5, 7], r)
    assert poly_gcd(a, b) == poly_from_roots([2, 5], r)


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        FieldPoly([1, 2], 5) + FieldPoly([1], 7)


def test_normalisation_and_json():
    f = FieldPoly([7, -1, 0, 0], 5)
    assert f.tolist() == [2, 4]
    assert FieldPoly.from_json(f.to_json(), 5) == f
    assert FieldPoly.zero(5).degree == -1
    assert f(3) == (2 + 4 * 3) % 5


def test_x_pow_minus_one():
    f = FieldPoly.x_pow_minus_one(6, 7)
    assert f.tolist() == [6, 0, 0, 0, 0, 0, 1]
    assert all(f(a) == 0 for a in (1, 6))  # roots 1 and -1 for even n


def test_powmod_matches_pow():
    r = 7
    mod = FieldPoly([3, 1, 0, 1], r)
    base = FieldPoly([1, 2], r)
    acc = FieldPoly([1], r)
    for _ in range(20):
        acc = (acc * base) % mod
    assert poly_powmod(base, 20, mod) == acc


@pytest.mark.parametrize("p,q,r", [(3, 5, 7), (3, 7, 5), (41, 79, 5), (59, 43, 13)])
def test_structured_generating_polynomial(p, q, r):
    params = validate_params(p, q, r)
    direct = generating_polynomial(generate_sequence(params))
    assert direct == generating_polynomial_structured(params)
    assert direct.modulus == r
