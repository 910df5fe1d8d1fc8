import numpy as np
import pytest

from gcquat.cyclotomy import Cell, generate_sequence
from gcquat.errors import DegreeTooLarge, UnsupportedCase
from gcquat.extfield import (
    LEMMA_NQR_BOTH, LEMMA_NQR_P_QR_Q, LEMMA_QR_BOTH, CensusReport, Sym, build_field, build_field_for,
    char_funcs, char_params, class_power_sum, class_power_sum_decomposed, evaluate_all, evaluate_gs_at,
    is_irreducible, lemma_case, lemma_value_prediction, sum_T, sum_T_from_chars, zero_census,
)
from gcquat.lincomp import lc_gcd
from gcquat.modnum import legendre, validate_params
from gcquat.polyring import FieldPoly
from util import valid_triples

SMALL = [t for t in valid_triples(200, (5, 7, 11, 13)) if validate_params(*t).m <= 12][::3]


@pytest.fixture(scope="module")
def fields():
    cache = {}

    def get(p, q, r):
        if (p, q, r) not in cache:
            params = validate_params(p, q, r)
            cache[(p, q, r)] = (params, build_field_for(params))
        return cache[(p, q, r)]
    return get


def test_instance_list_is_not_trivial():
    assert len(SMALL) >= 15


def test_irreducibility_test_examples():
    assert is_irreducible(FieldPoly([1, 1, 1], 5))      # x^2+x+1, no roots mod 5
    assert not is_irreducible(FieldPoly([4, 0, 1], 5))  # (x-2)(x+2)
    assert not is_irreducible(FieldPoly([1, 0, 2, 0, 1], 7))  # (x^2+1)^2


def test_build_field_deterministic_and_beta_order():
    a = build_field(7, 4, 15, seed=3)
    b = build_field(7, 4, 15, seed=3)
    assert a.modulus_poly == b.modulus_poly and a.beta.tolist() == b.beta.tolist()
    beta = a.beta
    assert beta ** 30 == 1
    assert all(not (beta ** (30 // d) == 1) for d in (2, 3, 5))


def test_degree_cap():
    params = validate_params(41, 79, 5)
    with pytest.raises(DegreeTooLarge) as err:
        build_field_for(params, m_cap=48)
    assert err.value.m == params.m > 48


@pytest.mark.parametrize("p,q,r", SMALL)
def test_root_hierarchy(p, q, r, fields):
    params, ctx = fields(p, q, r)
    roots = ctx.roots(params)
    assert roots["beta_2"] == ctx.from_int(-1)
    assert roots["beta_p"] ** p == 1 and not roots["beta_p"] == 1
    assert roots["beta_q"] ** q == 1 and not roots["beta_q"] == 1
    assert roots["beta_T"] == roots["beta"] * roots["beta"]


@pytest.mark.parametrize("p,q,r", SMALL)
def test_character_sum_identities(p, q, r, fields):
    params, ctx = fields(p, q, r)
    a0, a1, b0, b1 = char_params(ctx, params)
    assert a0 + a1 == -1 and b0 + b1 == -1
    for prime, x0, x1 in ((p, a0, a1), (q, b0, b1)):
        target = (prime - 1) // 4 if prime % 4 == 1 else -((prime + 1) // 4)
        assert x0 * (x0 + 1) == target
        assert x1 * (x1 + 1) == target
    assert a0.in_prime_field() == (legendre(r, p) == 1)
    assert b0.in_prime_field() == (legendre(r, q) == 1)


@pytest.mark.parametrize("p,q,r", SMALL)
def test_z_values(p, q, r, fields):
    params, ctx = fields(p, q, r)
    for k in range(0, params.N, max(1, params.N // 40)):
        c = char_funcs(ctx, params, k)
        assert c.Zp == (p - 1 if k % p == 0 else -1)
        assert c.Zq == (q - 1 if k % q == 0 else -1)


@pytest.mark.parametrize("p,q,r", SMALL)
def test_structured_evaluation_matches_horner(p, q, r, fields):
    params, ctx = fields(p, q, r)
    seq = generate_sequence(params)
    table = evaluate_all(ctx, seq)
    same_two = legendre(2, p) == legendre(2, q)
    for k in range(params.N):
        h = evaluate_gs_at(ctx, seq, k)
        assert np.array_equal(h.coeffs, table[k])
        assert evaluate_gs_at(ctx, seq, k, "structured") == h
        if same_two:
            assert evaluate_gs_at(ctx, seq, k, "reduced") == h
    if not same_two:
        with pytest.raises(UnsupportedCase):
            evaluate_gs_at(ctx, seq, 1, "reduced")


@pytest.mark.parametrize("p,q,r", SMALL)
def test_class_sum_decompositions(p, q, r, fields):
    params, ctx = fields(p, q, r)
    cells = (Cell.D0_2T, Cell.D1_2T, Cell.Q_D0_2P, Cell.Q_D1_2P, Cell.P_D0_2Q, Cell.P_D1_2Q)
    for k in range(params.N):
        for cell in cells:
            assert class_power_sum_decomposed(ctx, params, cell, k) == class_power_sum(ctx, params, cell, k)
        c = char_funcs(ctx, params, k)
        for i in (0, 1):
            assert sum_T(ctx, params, k, i) == sum_T_from_chars(params, c, i)


@pytest.mark.parametrize("p,q,r", SMALL)
def test_census_total_is_gcd_degree(p, q, r, fields):
    params, ctx = fields(p, q, r)
    rep = zero_census(ctx, params, generate_sequence(params))
    assert rep.total_zeros == params.N - lc_gcd(params)
    assert sum(c.size for c in rep.cells.values()) == params.N
    zero_cell = rep.cells[str(Cell.ZERO)]
    assert zero_cell.value == (3 * p * q - 1) % r
    assert zero_cell.zeros == int((3 * p * q - 1) % r == 0)
    assert rep.cells[str(Cell.PQ)].value == (2 * p * q - 4) % r
    assert CensusReport.from_dict(rep.to_dict()).to_json() == rep.to_json()


def test_census_same_seed_same_output():
    params = validate_params(3, 5, 7)
    seq = generate_sequence(params)
    a = zero_census(build_field_for(params, seed=11), params, seq).to_json()
    b = zero_census(build_field_for(params, seed=11), params, seq).to_json()
    assert a == b


def test_lemma_case_selection():
    assert lemma_case(validate_params(41, 79, 5)) == LEMMA_QR_BOTH
    assert lemma_case(validate_params(59, 43, 5)) == LEMMA_NQR_BOTH
    assert lemma_case(validate_params(3, 7, 5)) == LEMMA_NQR_P_QR_Q
    with pytest.raises(UnsupportedCase):
        lemma_case(validate_params(7, 3, 5))


def test_lemma_table_entries():
    params = validate_params(41, 79, 5)
    label, form = lemma_value_prediction(params, Cell.ZERO)
    assert form.is_const and str(form) == str(Sym.const(3 * 41 * 79 - 1))
    _, form = lemma_value_prediction(params, Cell.PQ)
    assert str(form) == str(Sym.const(2 * 41 * 79 - 4))


def test_lemma_even_table_letters():
    """Letters a..h instantiated at (A0, B0) = (0, 0) with A1 = B1 = -1."""
    from gcquat.extfield import QR_BOTH_EVEN_FORMS
    ctx = build_field(7, 1, 3)
    env = {"A0": ctx.from_int(0), "A1": ctx.from_int(-1), "B0": ctx.from_int(0), "B1": ctx.from_int(-1)}
    got = [QR_BOTH_EVEN_FORMS[c].evaluate(ctx, env) for c in "abcdefgh"]
    assert got == [ctx.from_int(v) for v in (-2, -4, 2, 0, -2, 0, -2, 0)]


def test_mixed_table_count_mismatch_is_pinned():
    # The literal table puts the zero of the q-multiple odd cells in the
    # wrong half here; the observed census is still N - LC.
    params = validate_params(3, 17, 19)
    rep = zero_census(build_field_for(params), params, generate_sequence(params))
    assert lemma_case(params) == LEMMA_NQR_P_QR_Q
    assert (rep.cells["qD0_2p"].zeros, rep.cells["qD0_2p"].predicted) == (1, 0)
    assert (rep.cells["qD1_2p"].zeros, rep.cells["qD1_2p"].predicted) == (0, 1)
    assert rep.total_zeros == rep.predicted_total == params.N - lc_gcd(params)


def test_nonresidue_table_counts_hold_while_values_differ():
    params = validate_params(3, 5, 7)
    rep = zero_census(build_field_for(params), params, generate_sequence(params))
    assert rep.lemma == LEMMA_NQR_BOTH
    assert rep.predictions_match
    assert rep.value_mismatches > 0
