"""Arithmetic in GF(r^m), character sums, and the zero census of G_s(beta^k).

Elements of GF(r^m) = GF(r)[y]/(f) are length-m int64 coefficient arrays.
``build_field`` finds f by a seeded random search and picks beta of exact
order 2T; the other roots are beta_T = beta^2, beta_p = beta^(2q),
beta_q = beta^(2p) and beta_2 = beta^T = -1.

Three ways of computing G_s(beta^k) are provided and cross-checked in the
tests: Horner's rule on the full polynomial, a gather over a precomputed
table of powers of beta (used by the census), and the structured
expansion in terms of the character sums A_i(k), B_i(k).

The lemma tables are kept as symbolic forms over A0, A1, B0, B1 so that a
prediction can be printed as well as evaluated.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from .cyclotomy import ALL_CELLS, Cell, QuaternarySequence, base_class, classify_all, cell_size
from .errors import DegreeTooLarge, UnsupportedCase
from .modnum import SequenceParams, factorize, legendre
from .polyring import FieldPoly, poly_gcd, poly_powmod

DEFAULT_M_CAP = 48
DEFAULT_SEED = 0x5EED


# --------------------------------------------------------------------------
# field context and elements

class ExtFieldCtx:
    """GF(r^m) together with a 2T-th root of unity beta."""

    def __init__(self, r: int, m: int, modulus_poly: FieldPoly, T: int, seed: int):
        self.r = r
        self.m = m
        self.modulus_poly = modulus_poly
        self.T = T
        self.seed = seed
        # Reduction uses y^m = -sum f_i y^i.
        self._tail = (-modulus_poly.coeffs[:m]) % r
        self.beta: ExtElem | None = None
        self._table: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"ExtFieldCtx(r={self.r}, m={self.m}, T={self.T}, seed={self.seed})"

    # raw array arithmetic ---------------------------------------------------

    def _reduce(self, c: np.ndarray) -> np.ndarray:
        m, r = self.m, self.r
        c = c % r
        for i in range(len(c) - 1, m - 1, -1):
            top = c[i]
            if top:
                c[i - m : i] = (c[i - m : i] + top * self._tail) % r
        out = np.zeros(m, dtype=np.int64)
        n = min(m, len(c))
        out[:n] = c[:n]
        return out

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._reduce(np.convolve(a, b))

    def _pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = self._one()
        base = a
        while e > 0:
            if e & 1:
                result = self._mul(result, base)
            e >>= 1
            if e:
                base = self._mul(base, base)
        return result

    def _one(self) -> np.ndarray:
        out = np.zeros(self.m, dtype=np.int64)
        out[0] = 1
        return out

    # element constructors ---------------------------------------------------

    def elem(self, coeffs) -> "ExtElem":
        arr = np.zeros(self.m, dtype=np.int64)
        c = np.asarray(coeffs, dtype=np.int64) % self.r
        if len(c) > self.m:
            arr = self._reduce(c)
        else:
            arr[: len(c)] = c
        return ExtElem(self, arr)

    def from_int(self, v: int) -> "ExtElem":
        return self.elem([v % self.r])

    def zero(self) -> "ExtElem":
        return ExtElem(self, np.zeros(self.m, dtype=np.int64))

    def one(self) -> "ExtElem":
        return ExtElem(self, self._one())

    # roots of unity ---------------------------------------------------------

    def beta_pow(self, e: int) -> "ExtElem":
        return ExtElem(self, self.power_table()[e % (2 * self.T)].copy())

    def roots(self, params: SequenceParams) -> dict[str, "ExtElem"]:
        return {"beta": self.beta_pow(1), "beta_T": self.beta_pow(2),
                "beta_p": self.beta_pow(2 * params.q), "beta_q": self.beta_pow(2 * params.p),
                "beta_2": self.beta_pow(params.T)}

    def power_table(self) -> np.ndarray:
        """Row j holds beta^j for j in [0, 2T); built once and cached."""
        if self._table is not None:
            return self._table
        N = 2 * self.T
        table = np.empty((N, self.m), dtype=np.int64)
        cur = self._one()
        b = self.beta.coeffs
        for j in range(N):
            table[j] = cur
            cur = self._mul(cur, b)
        table.setflags(write=False)
        self._table = table
        return table


class ExtElem:
    """Element of GF(r^m); value semantics, immutable coefficient array."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: ExtFieldCtx, coeffs: np.ndarray):
        self.ctx = ctx
        self.coeffs = coeffs
        coeffs.setflags(write=False)

    def _lift(self, other) -> np.ndarray:
        if isinstance(other, ExtElem):
            if other.ctx is not self.ctx:
                raise ValueError("elements from different fields")
            return other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.ctx.from_int(int(other)).coeffs
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return ExtElem(self.ctx, (self.coeffs + o) % self.ctx.r)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return ExtElem(self.ctx, (self.coeffs - o) % self.ctx.r)

    def __rsub__(self, other):
        o = self._lift(other)
        return ExtElem(self.ctx, (o - self.coeffs) % self.ctx.r)

    def __neg__(self):
        return ExtElem(self.ctx, (-self.coeffs) % self.ctx.r)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return ExtElem(self.ctx, self.coeffs * (int(other) % self.ctx.r) % self.ctx.r)
        o = self._lift(other)
        return ExtElem(self.ctx, self.ctx._mul(self.coeffs, o))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponents are not supported")
        return ExtElem(self.ctx, self.ctx._pow(self.coeffs, int(e)))

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return bool(np.array_equal(self.coeffs, o))

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    def __repr__(self) -> str:
        return f"ExtElem({self.tolist()})"

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def in_prime_field(self) -> bool:
        return not self.coeffs[1:].any()

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]


# --------------------------------------------------------------------------
# construction

def _x_pow_r_iter(f: FieldPoly, r: int, times: int) -> FieldPoly:
    """x^(r^times) mod f via repeated Frobenius."""
    xr = FieldPoly([0, 1], r)
    for _ in range(times):
        xr = poly_powmod(xr, r, f)
    return xr


def is_irreducible(f: FieldPoly) -> bool:
    """Rabin's test for a monic polynomial over GF(r)."""
    r, m = f.modulus, f.degree
    if m < 1:
        return False
    if m == 1:
        return True
    x = FieldPoly([0, 1], r)
    if _x_pow_r_iter(f, r, m) != x % f:
        return False
    for ell in factorize(m):
        h = _x_pow_r_iter(f, r, m // ell) - x
        if poly_gcd(h % f if not h.is_zero() else h, f).degree != 0:
            return False
    return True


def _elem_order_is(ctx: ExtFieldCtx, e: np.ndarray, n: int) -> bool:
    if not np.array_equal(ctx._pow(e, n), ctx._one()):
        return False
    return all(not np.array_equal(ctx._pow(e, n // ell), ctx._one()) for ell in factorize(n))


def build_field(r: int, m: int, T: int, seed: int = DEFAULT_SEED,
                m_cap: int = DEFAULT_M_CAP) -> ExtFieldCtx:
    """GF(r^m) with a root of unity of order exactly 2T.

    The same (r, m, T, seed) always yields the same modulus and beta.
    """
    if m > m_cap:
        raise DegreeTooLarge(m, m_cap)
    if (r**m - 1) % (2 * T):
        raise ValueError(f"2T={2 * T} does not divide {r}^{m} - 1")
    rng = random.Random(seed)
    while True:
        coeffs = [rng.randrange(r) for _ in range(m)] + [1]
        if m > 1 and coeffs[0] == 0:
            continue
        f = FieldPoly(coeffs, r)
        if is_irreducible(f):
            break
    ctx = ExtFieldCtx(r, m, f, T, seed)
    cofactor = (r**m - 1) // (2 * T)
    while True:
        h = np.array([rng.randrange(r) for _ in range(m)], dtype=np.int64)
        if not h.any():
            continue
        b = ctx._pow(h, cofactor)
        if _elem_order_is(ctx, b, 2 * T):
            ctx.beta = ExtElem(ctx, b)
            return ctx


def build_field_for(params: SequenceParams, seed: int = DEFAULT_SEED,
                    m_cap: int = DEFAULT_M_CAP) -> ExtFieldCtx:
    return build_field(params.r, params.m, params.T, seed=seed, m_cap=m_cap)


# --------------------------------------------------------------------------
# character sums

def _sum_powers(ctx: ExtFieldCtx, root_exp: int, k: int, exps: list[int]) -> ExtElem:
    """sum over i in exps of (beta^root_exp)^(k i)."""
    N = 2 * ctx.T
    idx = (root_exp * (k % N) * np.asarray(exps, dtype=np.int64)) % N
    return ExtElem(ctx, ctx.power_table()[idx].sum(axis=0) % ctx.r)


@dataclass(frozen=True)
class CharFuncs:
    A0: ExtElem
    A1: ExtElem
    B0: ExtElem
    B1: ExtElem
    Zp: ExtElem
    Zq: ExtElem


def char_funcs(ctx: ExtFieldCtx, params: SequenceParams, k: int) -> CharFuncs:
    """A_i(k) = sum over D_i(p) of beta_p^(k i), B_i(k) likewise, and Z = A0+A1."""
    p, q = params.p, params.q
    A0 = _sum_powers(ctx, 2 * q, k, base_class(params, p, 0))
    A1 = _sum_powers(ctx, 2 * q, k, base_class(params, p, 1))
    B0 = _sum_powers(ctx, 2 * p, k, base_class(params, q, 0))
    B1 = _sum_powers(ctx, 2 * p, k, base_class(params, q, 1))
    return CharFuncs(A0, A1, B0, B1, A0 + A1, B0 + B1)


def char_params(ctx: ExtFieldCtx, params: SequenceParams) -> tuple[ExtElem, ExtElem, ExtElem, ExtElem]:
    c = char_funcs(ctx, params, 1)
    return c.A0, c.A1, c.B0, c.B1


def sum_T(ctx: ExtFieldCtx, params: SequenceParams, k: int, index: int) -> ExtElem:
    """sum over D_index(T) of beta_T^(k i), computed directly."""
    return _sum_powers(ctx, 2, k, base_class(params, params.T, index))


def sum_T_from_chars(params: SequenceParams, c: CharFuncs, index: int) -> ExtElem:
    """The same sum rebuilt from A_i(k), B_i(k) by the reciprocity split."""
    same = legendre(params.q, params.p) == legendre(params.p, params.q)
    even = c.A0 * c.B0 + c.A1 * c.B1
    cross = c.A0 * c.B1 + c.A1 * c.B0
    if index == 0:
        return even if same else cross
    return cross if same else even


def class_power_sum(ctx: ExtFieldCtx, params: SequenceParams, cell: Cell, k: int) -> ExtElem:
    """sum over n in cell of beta^(k n)."""
    from .cyclotomy import enumerate_class
    return _sum_powers(ctx, 1, k, enumerate_class(params, cell))


def class_power_sum_decomposed(ctx: ExtFieldCtx, params: SequenceParams, cell: Cell, k: int) -> ExtElem:
    """class_power_sum for the odd cells, via products of A and B at scaled k."""
    c = params.consts
    sign = ctx.from_int(-1 if k % 2 else 1)
    if cell in (Cell.D0_2T, Cell.D1_2T):
        kp = c.inv2_p * c.q_inv_p * k
        kq = c.inv2_q * c.p_inv_q * k
        a = char_funcs(ctx, params, kp)
        b = char_funcs(ctx, params, kq)
        if cell is Cell.D0_2T:
            return sign * (a.A0 * b.B0 + a.A1 * b.B1)
        return sign * (a.A0 * b.B1 + a.A1 * b.B0)
    if cell in (Cell.Q_D0_2P, Cell.Q_D1_2P):
        a = char_funcs(ctx, params, c.inv2_p * k)
        return sign * (a.A0 if cell is Cell.Q_D0_2P else a.A1)
    if cell in (Cell.P_D0_2Q, Cell.P_D1_2Q):
        b = char_funcs(ctx, params, c.inv2_q * k)
        return sign * (b.B0 if cell is Cell.P_D0_2Q else b.B1)
    raise ValueError(f"no decomposition for cell {cell}")


# --------------------------------------------------------------------------
# evaluating G_s(beta^k)

def evaluate_gs_horner(ctx: ExtFieldCtx, seq: QuaternarySequence, k: int) -> ExtElem:
    x = ctx.beta_pow(k).coeffs
    acc = np.zeros(ctx.m, dtype=np.int64)
    for s in seq.values[::-1]:
        acc = ctx._mul(acc, x)
        acc[0] = (acc[0] + int(s)) % ctx.r
    return ExtElem(ctx, acc)


def evaluate_gs_structured(ctx: ExtFieldCtx, params: SequenceParams, k: int) -> ExtElem:
    """G_s(beta^k) assembled from character sums only."""
    c = params.consts
    eps = ctx.from_int(-1 if k % 2 else 1)
    ck = char_funcs(ctx, params, k)
    c_half_T = char_funcs(ctx, params, c.inv2_T * k)
    a_half = char_funcs(ctx, params, c.inv2_p * k)
    b_half = char_funcs(ctx, params, c.inv2_q * k)
    out = 2 * eps
    out = out + eps * sum_T_from_chars(params, c_half_T, 1) + sum_T_from_chars(params, ck, 1)
    out = out + eps * a_half.A1 + ck.A1
    out = out + eps * b_half.B1 + ck.B1
    out = out + 2 * (ck.Zp * ck.Zq + ck.Zp + ck.Zq)
    return out


def evaluate_gs_reduced(ctx: ExtFieldCtx, params: SequenceParams, k: int) -> ExtElem:
    """The simplified expansion available when 2 has the same character mod p and q."""
    two_p = legendre(2, params.p)
    two_q = legendre(2, params.q)
    if two_p != two_q:
        raise UnsupportedCase("reduced expansion needs (2/p) = (2/q)")
    eps = ctx.from_int(-1 if k % 2 else 1)
    ck = char_funcs(ctx, params, k)
    s1T = sum_T_from_chars(params, ck, 1)
    tail = 2 * (ck.Zp * ck.Zq + ck.Zp + ck.Zq)
    if two_p == 1:
        return 2 * eps + (eps + 1) * (s1T + ck.A1 + ck.B1) + tail
    return 2 * eps + (eps + 1) * s1T + (eps * ck.A0 + ck.A1) + (eps * ck.B0 + ck.B1) + tail


def evaluate_all(ctx: ExtFieldCtx, seq: QuaternarySequence, table: np.ndarray | None = None) -> np.ndarray:
    """G_s(beta^k) for every k in [0, N) as an (N, m) array."""
    N = len(seq.values)
    if table is None:
        table = ctx.power_table()
    support = np.flatnonzero(seq.values)
    weights = seq.values[support].astype(np.int64)
    out = np.empty((N, ctx.m), dtype=np.int64)
    for k in range(N):
        rows = table[(k * support) % N]
        out[k] = weights @ rows % ctx.r
    return out


def evaluate_gs_at(ctx: ExtFieldCtx, seq: QuaternarySequence, k: int, method: str = "horner") -> ExtElem:
    if not 0 <= k < len(seq.values):
        raise ValueError(f"k={k} outside [0, {len(seq.values)})")
    if method == "horner":
        return evaluate_gs_horner(ctx, seq, k)
    if method == "structured":
        return evaluate_gs_structured(ctx, seq.params, k)
    if method == "reduced":
        return evaluate_gs_reduced(ctx, seq.params, k)
    raise ValueError(f"unknown method {method!r}")


# --------------------------------------------------------------------------
# symbolic predictions

_VARS = ("A0", "A1", "B0", "B1")


class Sym:
    """Integer polynomial in A0, A1, B0, B1 (monomial exponent tuple -> coeff)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int, int, int], int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c: int) -> "Sym":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "Sym":
        e = [0, 0, 0, 0]
        e[_VARS.index(name)] = 1
        return cls({tuple(e): 1})

    def _co(self, other) -> "Sym":
        return other if isinstance(other, Sym) else Sym.const(int(other))

    def __add__(self, other):
        o = self._co(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return Sym(out)

    __radd__ = __add__

    def __neg__(self):
        return Sym({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return Sym(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Sym) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_const(self) -> bool:
        return all(k == (0, 0, 0, 0) for k in self.terms)

    def evaluate(self, ctx: ExtFieldCtx, values: dict[str, ExtElem]) -> ExtElem:
        acc = ctx.zero()
        for exps, coeff in self.terms.items():
            t = ctx.from_int(coeff)
            for name, e in zip(_VARS, exps):
                for _ in range(e):
                    t = t * values[name]
            acc = acc + t
        return acc

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(_VARS, exps) if e)
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


A0, A1, B0, B1 = (Sym.var(n) for n in _VARS)

LEMMA_QR_BOTH = "2-residue-both"          # (2/p) = (2/q) = 1
LEMMA_NQR_BOTH = "2-nonresidue-both"      # (2/p) = (2/q) = -1
LEMMA_NQR_P_QR_Q = "2-nonresidue-p-residue-q"


def lemma_case(params: SequenceParams) -> str:
    two_p = legendre(2, params.p)
    two_q = legendre(2, params.q)
    if two_p == 1 and two_q == 1:
        return LEMMA_QR_BOTH
    if two_p == -1 and two_q == -1:
        return LEMMA_NQR_BOTH
    if two_p == -1 and two_q == 1:
        return LEMMA_NQR_P_QR_Q
    raise UnsupportedCase("no value table for 2 a residue mod p and a non-residue mod q")


def _idx(a: int, prime: int) -> int | None:
    """0 for a nonzero square mod prime, 1 for a non-square, None if prime | a."""
    v = legendre(a, prime)
    return None if v == 0 else (0 if v == 1 else 1)


def sub_case_of(params: SequenceParams, k: int) -> tuple[int | None, int | None]:
    """(class of k mod p, class of k mod q); None where the prime divides k."""
    return _idx(k, params.p), _idx(k, params.q)


# Lettered forms for the even-unit cells when 2 is a residue mod both primes.
QR_BOTH_EVEN_FORMS = {
    "a": 2 * (A0 * B0 + A1 * B1 + A1 + B1),
    "b": 2 * (A0 * B1 + A1 * B0 + A1 + B1),
    "c": 2 * (A0 * B0 + A1 * B1 + A0 + B0),
    "d": 2 * (A0 * B1 + A1 * B0 + A0 + B0),
    "e": 2 * (A0 * B1 + A1 * B0 + A1 + B0),
    "f": 2 * (A0 * B0 + A1 * B1 + A1 + B0),
    "g": 2 * (A0 * B1 + A1 * B0 + A0 + B1),
    "h": 2 * (A0 * B0 + A1 * B1 + A0 + B1),
}

# (k1 class, k2 class) -> (letter when (q/p) = -(p/q), letter when equal)
_QR_BOTH_EVEN_LETTER = {
    (0, 0): ("a", "b"),
    (1, 1): ("c", "d"),
    (0, 1): ("e", "f"),
    (1, 0): ("g", "h"),
}


def lemma_value_prediction(params: SequenceParams, cell: Cell,
                           sub_case: tuple[int | None, int | None] = (None, None)) -> tuple[str, Sym]:
    """Predicted G_s(beta^k) for k in `cell` with the given (k mod p, k mod q) classes.

    Returns a short label for the table entry and the symbolic value.
    """
    case = lemma_case(params)
    p, q = params.p, params.q
    lp, lq = legendre(q, p), legendre(p, q)
    agree = lp == lq
    i1, i2 = sub_case
    if cell is Cell.ZERO:
        return "k=0", Sym.const(3 * p * q - 1)
    if cell is Cell.PQ:
        return "k=pq", Sym.const(2 * p * q - 4)
    idx = 0 if cell.value.startswith(("D0", "twoD0", "qD0", "pD0", "twoqD0", "twopD0")) else 1

    if case == LEMMA_QR_BOTH:
        if cell in (Cell.D0_2T, Cell.D1_2T, Cell.Q_D0_2P, Cell.Q_D1_2P, Cell.P_D0_2Q, Cell.P_D1_2Q):
            return "odd", Sym.const(-4)
        if cell in (Cell.TWO_D0_T, Cell.TWO_D1_T):
            letter = _QR_BOTH_EVEN_LETTER[(i1, i2)][1 if agree else 0]
            return letter, QR_BOTH_EVEN_FORMS[letter]
        if cell in (Cell.TWOQ_D0_P, Cell.TWOQ_D1_P):
            return ("2A0", 2 * A0) if (idx == 0) == (lp == -1) else ("2A1", 2 * A1)
        return ("2B0", 2 * B0) if (idx == 0) == (lq == -1) else ("2B1", 2 * B1)

    if case == LEMMA_NQR_BOTH:
        if cell in (Cell.TWOQ_D0_P, Cell.TWOQ_D1_P, Cell.TWOP_D0_Q, Cell.TWOP_D1_Q):
            return "2q/2p", Sym.const(-1)
        if cell in (Cell.D0_2T, Cell.D1_2T):
            form = {(0, 0): A0 - A1 + B0 - B1, (1, 1): A1 - A0 + B1 - B0,
                    (0, 1): A0 - A1 + B1 - B0, (1, 0): A1 - A0 + B0 - B1}[(i1, i2)]
            return f"odd{i1}{i2}", form - 4
        if cell in (Cell.TWO_D0_T, Cell.TWO_D1_T):
            if (idx == 0) != agree:
                return "even-AB", 2 * (A0 * B0 + A1 * B1 - 1)
            return "even-AB'", 2 * (A0 * B1 + A1 * B0 - 1)
        if cell in (Cell.Q_D0_2P, Cell.Q_D1_2P):
            return ("A1-A0-4", A1 - A0 - 4) if (idx == 0) == (lp == 1) else ("A0-A1-4", A0 - A1 - 4)
        return ("B1-B0-4", B1 - B0 - 4) if (idx == 0) == (lq == 1) else ("B0-B1-4", B0 - B1 - 4)

    # 2 a non-residue mod p, a residue mod q
    if cell in (Cell.TWOQ_D0_P, Cell.TWOQ_D1_P):
        return "2q", Sym.const(-1)
    if cell in (Cell.P_D0_2Q, Cell.P_D1_2Q):
        return "p", Sym.const(-4)
    if cell in (Cell.D0_2T, Cell.D1_2T):
        key = (i1, i2) if agree else (i1, 1 - i2)
        dA = A0 - A1
        dB = B0 - B1
        form = {(0, 0): dA * (dB + 1), (1, 1): dA * (dB - 1),
                (0, 1): -dA * (dB - 1), (1, 0): -dA * (dB + 1)}[key]
        return f"odd{key[0]}{key[1]}", form - 4
    if cell in (Cell.TWO_D0_T, Cell.TWO_D1_T):
        return ("2B0", 2 * B0) if i2 == 1 else ("2B1", 2 * B1)
    if cell in (Cell.Q_D0_2P, Cell.Q_D1_2P):
        return ("A0-A1-4", A0 - A1 - 4) if (i1 == 1) == (lp == 1) else ("A1-A0-4", A1 - A0 - 4)
    return ("2B0", 2 * B0) if (i2 == 1) == (lq == 1) else ("2B1", 2 * B1)


# --------------------------------------------------------------------------
# census

@dataclass
class CellCensus:
    size: int
    zeros: int
    predicted: int | None = None
    value: int | None = None  # G_s(beta^k) for the singleton cells {0} and {pq}


@dataclass
class CensusReport:
    params: dict
    seed: int
    m: int
    lemma: str | None
    cells: dict[str, CellCensus] = field(default_factory=dict)
    total_zeros: int = 0
    predicted_total: int | None = None
    value_mismatches: int = 0

    def to_dict(self) -> dict:
        return {
            "params": self.params, "seed": self.seed, "m": self.m, "lemma": self.lemma,
            "cells": {k: {"size": v.size, "zeros": v.zeros, "predicted": v.predicted, "value": v.value}
                      for k, v in self.cells.items()},
            "total_zeros": self.total_zeros, "predicted_total": self.predicted_total,
            "value_mismatches": self.value_mismatches,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "CensusReport":
        cells = {k: CellCensus(**v) for k, v in d["cells"].items()}
        return cls(params=d["params"], seed=d["seed"], m=d["m"], lemma=d["lemma"], cells=cells,
                   total_zeros=d["total_zeros"], predicted_total=d["predicted_total"],
                   value_mismatches=d["value_mismatches"])

    @property
    def predictions_match(self) -> bool | None:
        if self.lemma is None:
            return None
        return all(c.predicted == c.zeros for c in self.cells.values())


def zero_census(ctx: ExtFieldCtx, params: SequenceParams, seq: QuaternarySequence,
                values: np.ndarray | None = None) -> CensusReport:
    """Count zeros of G_s(beta^k) per cell and compare with the lemma tables.

    `values` may supply precomputed evaluations (one row per k), which is
    how the tests feed synthetic polynomials through the same bookkeeping.
    """
    if values is None:
        values = evaluate_all(ctx, seq)
    is_zero = ~values.any(axis=1)
    cell_idx = classify_all(params)
    try:
        case = lemma_case(params)
    except UnsupportedCase:
        case = None
    report = CensusReport(params=params.as_dict(), seed=ctx.seed, m=ctx.m, lemma=case)
    if case is not None:
        a0, a1, b0, b1 = char_params(ctx, params)
        env = {"A0": a0, "A1": a1, "B0": b0, "B1": b1}
        cache: dict[tuple, tuple[bool, np.ndarray]] = {}
    for j, cell in enumerate(ALL_CELLS):
        ks = np.flatnonzero(cell_idx == j)
        entry = CellCensus(size=cell_size(params, cell), zeros=int(is_zero[ks].sum()))
        if len(ks) == 1 and not values[ks[0], 1:].any():
            entry.value = int(values[ks[0], 0])
        if case is not None:
            entry.predicted = 0
            for k in ks:
                key = (cell, *sub_case_of(params, int(k)))
                if key not in cache:
                    _, form = lemma_value_prediction(params, cell, key[1:])
                    val = form.evaluate(ctx, env)
                    cache[key] = (val.is_zero(), val.coeffs)
                pz, pv = cache[key]
                entry.predicted += int(pz)
                if not np.array_equal(pv, values[k]):
                    report.value_mismatches += 1
        report.cells[cell.value] = entry
    report.total_zeros = int(is_zero.sum())
    if case is not None:
        report.predicted_total = sum(c.predicted for c in report.cells.values())
    return report
