"""Generalized cyclotomic classes modulo 2pq and the quaternary sequence.

Z_{2T} (T = pq) splits into fourteen cells: the two singletons {0} and
{T}, and a D_0 / D_1 pair for each of the six unit groups scaled by
1, 2, q, p, 2q, 2p.  ``classify`` decides the cell of a residue from
Legendre symbols; ``enumerate_class`` builds the same cells from powers
of the common primitive root and exists to cross-check it.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .modnum import SequenceParams, legendre, pattern8


class Cell(str, Enum):
    ZERO = "zero"
    PQ = "pq"
    D0_2T = "D0_2T"
    D1_2T = "D1_2T"
    TWO_D0_T = "twoD0_T"
    TWO_D1_T = "twoD1_T"
    Q_D0_2P = "qD0_2p"
    Q_D1_2P = "qD1_2p"
    P_D0_2Q = "pD0_2q"
    P_D1_2Q = "pD1_2q"
    TWOQ_D0_P = "twoqD0_p"
    TWOQ_D1_P = "twoqD1_p"
    TWOP_D0_Q = "twopD0_q"
    TWOP_D1_Q = "twopD1_q"

    def __str__(self) -> str:
        return self.value


ALL_CELLS = tuple(Cell)

# Symbol emitted on each cell.
SYMBOL = {
    Cell.ZERO: 0, Cell.PQ: 2,
    Cell.D0_2T: 0, Cell.Q_D0_2P: 0, Cell.P_D0_2Q: 0,
    Cell.D1_2T: 1, Cell.Q_D1_2P: 1, Cell.P_D1_2Q: 1,
    Cell.TWO_D0_T: 2, Cell.TWOQ_D0_P: 2, Cell.TWOP_D0_Q: 2,
    Cell.TWO_D1_T: 3, Cell.TWOQ_D1_P: 3, Cell.TWOP_D1_Q: 3,
}


def cell_size(params: SequenceParams, cell: Cell) -> int:
    p, q = params.p, params.q
    if cell in (Cell.ZERO, Cell.PQ):
        return 1
    if cell in (Cell.D0_2T, Cell.D1_2T, Cell.TWO_D0_T, Cell.TWO_D1_T):
        return (p - 1) * (q - 1) // 2
    if cell in (Cell.Q_D0_2P, Cell.Q_D1_2P, Cell.TWOQ_D0_P, Cell.TWOQ_D1_P):
        return (p - 1) // 2
    return (q - 1) // 2


def _index(bit: bool) -> int:
    return 0 if bit else 1


def classify(t: int, params: SequenceParams) -> Cell:
    """Cell of Z_{2T} containing t."""
    p, q, T = params.p, params.q, params.T
    if not 0 <= t < 2 * T:
        raise ValueError(f"t={t} outside [0, {2 * T})")
    if t == 0:
        return Cell.ZERO
    if t == T:
        return Cell.PQ
    odd = t % 2 == 1
    u = t if odd else t // 2
    in_p, in_q = u % p != 0, u % q != 0
    if in_p and in_q:
        i = _index(legendre(u, p) == legendre(u, q))
        return (Cell.D0_2T, Cell.D1_2T)[i] if odd else (Cell.TWO_D0_T, Cell.TWO_D1_T)[i]
    if in_p:  # q | u
        i = _index(legendre(u // q, p) == 1)
        return (Cell.Q_D0_2P, Cell.Q_D1_2P)[i] if odd else (Cell.TWOQ_D0_P, Cell.TWOQ_D1_P)[i]
    i = _index(legendre(u // p, q) == 1)
    return (Cell.P_D0_2Q, Cell.P_D1_2Q)[i] if odd else (Cell.TWOP_D0_Q, Cell.TWOP_D1_Q)[i]


def _powers(base: int, count: int, mod: int) -> list[int]:
    out, v = [], 1 % mod
    for _ in range(count):
        out.append(v)
        v = v * base % mod
    return out


def base_class(params: SequenceParams, modulus: int, index: int) -> list[int]:
    """D_index^{(modulus)} for modulus in {p, q, 2p, 2q, T, 2T}, sorted.

    Built from powers of g (times x for index 1 on T and 2T), or of g^2
    (times g for index 1) on the prime-related moduli.
    """
    p, q, T, g, x = params.p, params.q, params.T, params.g, params.x
    if modulus in (T, 2 * T):
        elems = _powers(g, (p - 1) * (q - 1) // 2, modulus)
        if index:
            elems = [e * x % modulus for e in elems]
    elif modulus in (p, q, 2 * p, 2 * q):
        prime = p if modulus in (p, 2 * p) else q
        elems = _powers(g * g % modulus, (prime - 1) // 2, modulus)
        if index:
            elems = [e * g % modulus for e in elems]
    else:
        raise ValueError(f"no cyclotomic classes modulo {modulus}")
    return sorted(set(elems))


_CELL_RECIPE = {
    Cell.D0_2T: (1, "2T", 0), Cell.D1_2T: (1, "2T", 1),
    Cell.TWO_D0_T: (2, "T", 0), Cell.TWO_D1_T: (2, "T", 1),
    Cell.Q_D0_2P: ("q", "2p", 0), Cell.Q_D1_2P: ("q", "2p", 1),
    Cell.P_D0_2Q: ("p", "2q", 0), Cell.P_D1_2Q: ("p", "2q", 1),
    Cell.TWOQ_D0_P: ("2q", "p", 0), Cell.TWOQ_D1_P: ("2q", "p", 1),
    Cell.TWOP_D0_Q: ("2p", "q", 0), Cell.TWOP_D1_Q: ("2p", "q", 1),
}


def enumerate_class(params: SequenceParams, cell: Cell) -> list[int]:
    """Members of a cell, generated constructively and reduced mod 2T."""
    if cell is Cell.ZERO:
        return [0]
    if cell is Cell.PQ:
        return [params.T]
    p, q, T = params.p, params.q, params.T
    names = {1: 1, 2: 2, "p": p, "q": q, "2p": 2 * p, "2q": 2 * q, "T": T, "2T": 2 * T}
    cof, mod, idx = _CELL_RECIPE[cell]
    c = names[cof]
    return sorted({c * d % (2 * T) for d in base_class(params, names[mod], idx)})


def classify_all(params: SequenceParams) -> np.ndarray:
    """Cell index (position in ALL_CELLS) of every t in [0, 2T), vectorised."""
    p, q, T = params.p, params.q, params.T
    N = 2 * T
    t = np.arange(N, dtype=np.int64)
    odd = (t & 1) == 1
    u = np.where(odd, t, t // 2)
    chi_p = _legendre_table(p)
    chi_q = _legendre_table(q)
    out = np.empty(N, dtype=np.int8)
    pos = {c: i for i, c in enumerate(ALL_CELLS)}

    unit = (u % p != 0) & (u % q != 0)
    same = chi_p[u % p] == chi_q[u % q]
    qmul = (u % p != 0) & (u % q == 0)
    pmul = (u % p == 0) & (u % q != 0)
    res_p = chi_p[(u // q) % p] == 1
    res_q = chi_q[(u // p) % q] == 1

    def put(mask, c0, c1, bit):
        out[mask & bit] = pos[c0]
        out[mask & ~bit] = pos[c1]

    put(unit & odd, Cell.D0_2T, Cell.D1_2T, same)
    put(unit & ~odd, Cell.TWO_D0_T, Cell.TWO_D1_T, same)
    put(qmul & odd, Cell.Q_D0_2P, Cell.Q_D1_2P, res_p)
    put(qmul & ~odd, Cell.TWOQ_D0_P, Cell.TWOQ_D1_P, res_p)
    put(pmul & odd, Cell.P_D0_2Q, Cell.P_D1_2Q, res_q)
    put(pmul & ~odd, Cell.TWOP_D0_Q, Cell.TWOP_D1_Q, res_q)
    out[0] = pos[Cell.ZERO]
    out[T] = pos[Cell.PQ]
    return out


def _legendre_table(p: int) -> np.ndarray:
    """chi[a] = (a/p) for a in [0, p)."""
    chi = -np.ones(p, dtype=np.int8)
    chi[0] = 0
    chi[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    return chi


@dataclass(frozen=True)
class QuaternarySequence:
    params: SequenceParams
    values: np.ndarray  # uint8, length N

    def __len__(self) -> int:
        return len(self.values)

    def to_json(self) -> str:
        pr = self.params
        return json.dumps({"p": pr.p, "q": pr.q, "r": pr.r,
                           "values": [int(v) for v in self.values]})

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for v in self.values:
            w.writerow([int(v)])
        return buf.getvalue()

    @classmethod
    def from_json(cls, text: str) -> "QuaternarySequence":
        from .modnum import validate_params
        d = json.loads(text)
        params = validate_params(d["p"], d["q"], d["r"])
        return cls(params, np.asarray(d["values"], dtype=np.uint8))


def generate_sequence(params: SequenceParams) -> QuaternarySequence:
    symbols = np.array([SYMBOL[c] for c in ALL_CELLS], dtype=np.uint8)
    values = symbols[classify_all(params)]
    values.setflags(write=False)
    return QuaternarySequence(params, values)


@dataclass(frozen=True)
class PqPattern:
    s: int
    t: int

    def __iter__(self):
        return iter((self.s, self.t))


def pq_pattern(p: int, q: int) -> PqPattern:
    return PqPattern(pattern8(p), pattern8(q))
