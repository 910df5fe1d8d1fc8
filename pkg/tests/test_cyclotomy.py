import json
import random

import numpy as np
import pytest

from gcquat.cyclotomy import (
    ALL_CELLS, SYMBOL, Cell, QuaternarySequence, base_class, cell_size, classify, classify_all,
    enumerate_class, generate_sequence, pq_pattern,
)
from gcquat.modnum import legendre, validate_params
from util import valid_pairs

PAIRS_300 = valid_pairs(300)


def params(p, q):
    return validate_params(p, q, 5 if 5 not in (p, q) else 7)


@pytest.mark.parametrize("p,q", PAIRS_300)
def test_classify_agrees_with_enumeration(p, q):
    pr = params(p, q)
    cells = {c: set(enumerate_class(pr, c)) for c in ALL_CELLS}
    covered = set()
    for c, members in cells.items():
        assert len(members) == cell_size(pr, c)
        assert not covered & members
        covered |= members
    assert covered == set(range(pr.N))
    idx = classify_all(pr)
    for t in range(pr.N):
        c = classify(t, pr)
        assert t in cells[c]
        assert ALL_CELLS[idx[t]] is c


def test_sequence_example_3_5():
    seq = generate_sequence(params(3, 5))
    assert len(seq) == 30
    assert seq.values[0] == 0 and seq.values[15] == 2
    assert np.bincount(seq.values, minlength=4).tolist() == [8, 7, 8, 7]


@pytest.mark.parametrize("p,q", [(3, 7), (41, 79)])
def test_sequence_symbol_counts(p, q):
    pr = params(p, q)
    seq = generate_sequence(pr)
    counts = np.bincount(seq.values, minlength=4)
    expect = np.zeros(4, dtype=int)
    for c in ALL_CELLS:
        expect[SYMBOL[c]] += cell_size(pr, c)
    assert counts.tolist() == expect.tolist()


def test_sequence_is_read_only_and_roundtrips():
    seq = generate_sequence(params(3, 7))
    with pytest.raises(ValueError):
        seq.values[0] = 1
    back = QuaternarySequence.from_json(seq.to_json())
    assert np.array_equal(back.values, seq.values)
    assert seq.to_csv().splitlines()[:3] == [str(int(v)) for v in seq.values[:3]]


def test_classify_rejects_out_of_range():
    with pytest.raises(ValueError):
        classify(30, params(3, 5))


@pytest.mark.parametrize("p,q", PAIRS_300)
def test_crt_map_on_unit_classes_is_bijection(p, q):
    pr = params(p, q)
    T = pr.T
    Dp = [set(base_class(pr, p, i)) for i in (0, 1)]
    Dq = [set(base_class(pr, q, i)) for i in (0, 1)]
    for i in (0, 1):
        dom = base_class(pr, T, i)
        image = {(t % p, t % q) for t in dom}
        assert len(image) == len(dom)
        target = {(a, b) for j in (0, 1) for a in Dp[j] for b in Dq[(j + i) % 2]}
        assert image == target


@pytest.mark.parametrize("p,q", PAIRS_300)
def test_doubled_modulus_classes_reduce_and_are_odd(p, q):
    pr = params(p, q)
    for u in (p, q, pr.T):
        for i in (0, 1):
            big = base_class(pr, 2 * u, i)
            assert all(v % 2 == 1 for v in big)
            assert sorted({v % u for v in big}) == base_class(pr, u, i)
            assert len(big) == len(base_class(pr, u, i))


@pytest.mark.parametrize("p,q", PAIRS_300[::4])
def test_class_multiplication_closure(p, q):
    pr = params(p, q)
    rng = random.Random(p * 1000 + q)
    for u in (p, q, pr.T):
        D = [set(base_class(pr, u, i)) for i in (0, 1)]
        for i in (0, 1):
            for a in rng.sample(sorted(D[i]), min(4, len(D[i]))):
                for j in (0, 1):
                    assert {a * d % u for d in D[j]} == D[(i + j) % 2]


@pytest.mark.parametrize("p,q", valid_pairs(3000))
def test_half_mod_T_class_follows_character_of_two(p, q):
    pr = params(p, q)
    half = pr.consts.inv2_T
    in_d0 = half in set(base_class(pr, pr.T, 0))
    assert in_d0 == (legendre(2, p) == legendre(2, q))


def test_pq_pattern_examples():
    assert tuple(pq_pattern(59, 43)) == (3, 3)
    assert tuple(pq_pattern(41, 79)) == (1, -1)
    assert tuple(pq_pattern(17, 17)) == (1, 1)


def test_cell_names_are_stable():
    assert [str(c) for c in (Cell.ZERO, Cell.PQ, Cell.D0_2T)] == ["zero", "pq", "D0_2T"]
    assert json.dumps(str(Cell.TWOP_D1_Q)) == '"twopD1_q"'
