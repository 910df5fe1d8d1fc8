"""Linear complexity by three routes: polynomial gcd, Berlekamp-Massey, and
closed-form formulas selected by quadratic-character guards.

The closed forms live in ``THEOREMS``, a flat list of records.  Each record
fixes the required characters of 2 and r modulo p and q, the admissible
(p mod 8, q mod 8) patterns with their divisibility conditions, and the
formula.  ``lc_theorem`` evaluates every record and reports all matches.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .cyclotomy import generate_sequence
from .modnum import SequenceParams, is_prime, legendre, pattern8, validate_params
from .errors import ParamError
from .polyring import FieldPoly, generating_polynomial, poly_gcd


# --------------------------------------------------------------------------
# gcd and Berlekamp-Massey

def lc_gcd(params: SequenceParams) -> int:
    """N - deg gcd(x^N - 1, G_s(x)) over GF(r)."""
    seq = generate_sequence(params)
    g = poly_gcd(FieldPoly.x_pow_minus_one(params.N, params.r), generating_polynomial(seq))
    return params.N - g.degree


def berlekamp_massey(symbols, r: int) -> tuple[int, np.ndarray]:
    """Shortest LFSR over GF(r) generating `symbols`.

    Returns (L, C) with C[0] = 1 and s[i] + sum_{j=1..L} C[j] s[i-j] = 0.
    """
    s = np.asarray(symbols, dtype=np.int64) % r
    n = len(s)
    srev = s[::-1].copy()
    C = np.zeros(n + 1, dtype=np.int64)
    B = np.zeros(n + 1, dtype=np.int64)
    C[0] = B[0] = 1
    L, shift, b = 0, 1, 1
    len_b = 1
    for i in range(n):
        # s[i-1], ..., s[i-L] sit contiguously in the reversed copy
        start = n - i
        d = (int(s[i]) + int(np.dot(C[1 : L + 1], srev[start : start + L]))) % r
        if d == 0:
            shift += 1
            continue
        coef = d * pow(b, -1, r) % r
        if 2 * L <= i:
            old = C[: L + 1].copy()
            seg = C[shift : shift + len_b]
            seg -= coef * B[:len_b]
            seg %= r
            new_L = i + 1 - L
            B[: L + 1] = old
            B[L + 1 : len_b] = 0
            len_b = L + 1
            L = new_L
            b = d
            shift = 1
        else:
            seg = C[shift : shift + len_b]
            seg -= coef * B[:len_b]
            seg %= r
            shift += 1
    return L, C[: L + 1].copy()


def lc_bm(symbols, r: int, n: int | None = None) -> int:
    """Linear complexity of the first n symbols (all of them by default)."""
    s = np.asarray(symbols)
    if n is not None:
        s = s[:n]
    return berlekamp_massey(s, r)[0]


def lc_bm_periodic(params: SequenceParams, periods: int = 2) -> int:
    """BM on `periods` copies of one period; two suffice since LC <= N."""
    seq = generate_sequence(params)
    return lc_bm(np.tile(seq.values, periods), params.r)


# --------------------------------------------------------------------------
# closed forms

@dataclass(frozen=True)
class Lin:
    """Integer linear form a*pq + b*p + c*q + d."""

    pq: int = 0
    p: int = 0
    q: int = 0
    c: int = 0

    def __call__(self, p: int, q: int) -> int:
        return self.pq * p * q + self.p * p + self.q * q + self.c

    def __str__(self) -> str:
        out = ""
        for coef, name in ((self.pq, "pq"), (self.p, "p"), (self.q, "q"), (self.c, "")):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            body = name if (mag == 1 and name) else f"{mag}{name}"
            out += f"{sign}{body}" if out else ("-" if coef < 0 else "") + body
        return out or "0"


@dataclass(frozen=True)
class Formula:
    num: Lin
    den: int = 1

    def __call__(self, p: int, q: int) -> int:
        v = self.num(p, q)
        if v % self.den:
            raise ArithmeticError(f"({self.num})/{self.den} not integral at p={p}, q={q}")
        return v // self.den

    def __str__(self) -> str:
        return f"({self.num})/{self.den}" if self.den != 1 else str(self.num)


@dataclass(frozen=True)
class PatternGuard:
    divides: tuple[Lin, ...] = ()     # r divides every form
    hit_forms: tuple[Lin, ...] = ()   # "hit" when r divides any of these
    r_in: frozenset[int] | None = None
    r_out: frozenset[int] | None = None

    def describe(self) -> str:
        parts = [f"r|{f}" for f in self.divides]
        if self.r_in is not None:
            parts.append(f"r in {sorted(self.r_in)}")
        if self.r_out is not None:
            parts.append(f"r not in {sorted(self.r_out)}")
        return " and ".join(parts)


@dataclass(frozen=True)
class TheoremCase:
    family: str
    case: int
    two: tuple[int, int] | None          # required ((2/p), (2/q)); None means any
    rchar: tuple[int, int]               # required ((r/p), (r/q))
    patterns: dict | None                # (s, t) -> PatternGuard; None means any pattern
    formula: Formula
    hit: bool | None = None              # required state of the hit_forms test
    r_is_5: bool | None = None
    any_guard: PatternGuard = field(default_factory=PatternGuard)

    @property
    def id(self) -> str:
        return f"{self.family}.{self.case}"

    def guard_for(self, s: int, t: int) -> PatternGuard | None:
        if self.patterns is None:
            return self.any_guard
        return self.patterns.get((s, t))

    def matches(self, p: int, q: int, r: int) -> bool:
        if self.two is not None and (legendre(2, p), legendre(2, q)) != self.two:
            return False
        if (legendre(r, p), legendre(r, q)) != self.rchar:
            return False
        g = self.guard_for(pattern8(p), pattern8(q))
        if g is None:
            return False
        if any(f(p, q) % r for f in g.divides):
            return False
        if g.r_in is not None and r not in g.r_in:
            return False
        if g.r_out is not None and r in g.r_out:
            return False
        if self.hit is not None:
            hit = any(f(p, q) % r == 0 for f in g.hit_forms)
            if hit != self.hit:
                return False
        if self.r_is_5 is not None and (r == 5) != self.r_is_5:
            return False
        return True

    def condition(self, p: int, q: int) -> str:
        s, t = pattern8(p), pattern8(q)
        g = self.guard_for(s, t)
        bits = [f"(p,q) in ({s},{t})"]
        if g is not None and g.describe():
            bits.append(g.describe())
        if self.hit is not None and g is not None and g.hit_forms:
            forms = " or ".join(f"r|{f}" for f in g.hit_forms)
            bits.append(f"({forms})" if self.hit else f"not ({forms})")
        if self.r_is_5 is not None:
            bits.append("r=5" if self.r_is_5 else "r!=5")
        return " and ".join(bits)


def _div(*forms: Lin) -> tuple[Lin, ...]:
    return tuple(forms)


P_M1, P_P1 = Lin(p=1, c=-1), Lin(p=1, c=1)
Q_M1, Q_P1 = Lin(q=1, c=-1), Lin(q=1, c=1)


def _build_theorems() -> list[TheoremCase]:
    out: list[TheoremCase] = []

    def add(family, cases, two, rchar, patterns_per_case, formulas, hits=None, r5s=None, any_guard=None):
        for i, f in enumerate(formulas):
            out.append(TheoremCase(
                family=family, case=i + 1, two=two, rchar=rchar,
                patterns=patterns_per_case[i] if patterns_per_case is not None else None,
                formula=f,
                hit=None if hits is None else hits[i],
                r_is_5=None if r5s is None else r5s[i],
                any_guard=any_guard or PatternGuard()))

    three_way = ([False, True, True], [None, False, True])

    # 2 a residue modulo both primes
    add("T-A1", 2, (1, 1), (1, 1),
        [{(1, -1): PatternGuard(_div(P_M1, Q_P1)), (-1, 1): PatternGuard(_div(P_P1, Q_M1))},
         {(-1, -1): PatternGuard(_div(P_P1, Q_P1))}],
        [Formula(Lin(5, 1, 1, 1), 4), Formula(Lin(4, -1, -1, 2), 2)])
    a2 = {(1, -1): PatternGuard(_div(P_M1), (Lin(q=3, c=-1), Lin(q=2, c=-4))),
          (-1, 1): PatternGuard(_div(P_P1), (Lin(q=3, c=1), Lin(q=2, c=4)))}
    add("T-A2", 3, (1, 1), (1, -1), [a2] * 3,
        [Formula(Lin(3, 0, 1, 0), 2), Formula(Lin(3, 0, 1, -2), 2), Formula(Lin(3, 0, 1, -4), 2)],
        *three_way)
    a3 = {(-1, -1): PatternGuard(_div(P_P1), (Lin(q=3, c=1), Lin(q=2, c=4)))}
    # LC = 2pq - (p-1)/2, then one and two fewer.
    add("T-A3", 3, (1, 1), (1, -1), [a3] * 3,
        [Formula(Lin(4, -1, 0, 1), 2), Formula(Lin(4, -1, 0, -1), 2), Formula(Lin(4, -1, 0, -3), 2)],
        *three_way)

    # 2 a non-residue modulo both primes
    def both(k: int, same: frozenset | None = None, mixed: frozenset | None = None, inside: bool = False):
        def g(dp, dq, rs):
            kw = {}
            if rs is not None:
                kw["r_in" if inside else "r_out"] = rs
            return PatternGuard(_div(dp, dq), **kw)
        return {(3, 3): g(Lin(p=1, c=k), Lin(q=1, c=k), same),
                (-3, 3): g(Lin(p=1, c=-k), Lin(q=1, c=k), mixed),
                (3, -3): g(Lin(p=1, c=k), Lin(q=1, c=-k), mixed)}

    b1_same, b1_mixed = frozenset({13, 59, 127}), frozenset({43, 769})
    add("T-B1", 3, (-1, -1), (1, 1),
        [both(16, b1_same | {5}, b1_mixed | {5}), both(16, b1_same, b1_mixed, inside=True), both(16)],
        [Formula(Lin(4, -1, -1, 2), 2), Formula(Lin(4, -1, -1, 0), 2), Formula(Lin(3, 0, 0, 1), 2)],
        r5s=[None, None, True])
    b2_same, b2_mixed = frozenset({7, 47}), frozenset({7})
    add("T-B2", 2, (-1, -1), (1, 1),
        [both(4, b2_same, b2_mixed), both(4, b2_same, b2_mixed, inside=True)],
        [Formula(Lin(7, 1, 1, -1), 4), Formula(Lin(7, 1, 1, -5), 4)])
    add("T-B3", 2, (-1, -1), (1, 1), [both(1), both(1)],
        [Formula(Lin(3, 1, 1, -1), 2), Formula(Lin(3, 0, 0, 1), 2)], r5s=[False, True])
    b4_plus = PatternGuard(_div(Lin(p=1, c=16)), (Lin(q=48, c=1), Lin(q=8, c=1)))
    b4_minus = PatternGuard(_div(Lin(p=1, c=-16)), (Lin(q=48, c=-1), Lin(q=8, c=-1)))
    b4 = {(3, 3): b4_plus, (3, -3): b4_plus, (-3, 3): b4_minus}
    add("T-B4", 3, (-1, -1), (1, -1), [b4] * 3,
        [Formula(Lin(4, -1, 0, 1), 2), Formula(Lin(4, -1, 0, -1), 2), Formula(Lin(4, -1, 0, -3), 2)],
        *three_way)

    # 2 a non-residue modulo p and a residue modulo q
    def mixed(k: int, rs_a: frozenset, rs_b: frozenset, inside: bool):
        key = "r_in" if inside else "r_out"
        return {(3, 1): PatternGuard(_div(Lin(p=1, c=k), Q_M1), **{key: rs_a}),
                (-3, -1): PatternGuard(_div(Lin(p=1, c=-k), Q_P1), **{key: rs_a}),
                (3, -1): PatternGuard(_div(Lin(p=1, c=k), Q_P1), **{key: rs_b})}

    c1a, c1b = frozenset({13}), frozenset({11})
    add("T-C1", 2, (-1, 1), (1, 1), [mixed(4, c1a, c1b, False), mixed(4, c1a, c1b, True)],
        [Formula(Lin(5, 3, 1, -1), 4), Formula(Lin(5, 3, 1, -5), 4)])
    c2a, c2b = frozenset({7}), frozenset({7, 47})
    add("T-C2", 2, (-1, 1), (1, 1), [mixed(16, c2a, c2b, False), mixed(16, c2a, c2b, True)],
        [Formula(Lin(3, 0, 0, 1), 2), Formula(Lin(3, 0, 0, -1), 2)])
    c3 = {(3, 1): b4_plus, (3, -1): b4_plus, (-3, -1): b4_minus}
    add("T-C3", 3, (-1, 1), (1, -1), [c3] * 3,
        [Formula(Lin(4, -1, 0, 1), 2), Formula(Lin(4, -1, 0, -1), 2), Formula(Lin(4, -1, 0, -3), 2)],
        *three_way)
    c4_plus = PatternGuard(_div(Q_P1), (Lin(p=3, c=1), Lin(p=2, c=4)))
    c4 = {(3, 1): PatternGuard(_div(Q_M1), (Lin(p=3, c=-1), Lin(p=2, c=-4))),
          (3, -1): c4_plus, (-3, -1): c4_plus}
    add("T-C4", 3, (-1, 1), (-1, 1), [c4] * 3,
        [Formula(Lin(3, 1, 0, 0), 2), Formula(Lin(3, 1, 0, -2), 2), Formula(Lin(3, 1, 0, -4), 2)],
        *three_way)

    # r a non-residue modulo both primes, any character of 2
    add("T-C5", 2, None, (-1, -1), None,
        [Formula(Lin(2)), Formula(Lin(2, 0, 0, -1))], hits=[False, True],
        any_guard=PatternGuard(hit_forms=(Lin(pq=3, c=-1), Lin(pq=2, c=-4))))
    return out


THEOREMS: list[TheoremCase] = _build_theorems()
THEOREM_IDS = tuple(t.id for t in THEOREMS)

UNIQUE = "Unique"
MULTIPLE = "Multiple-Consistent"
CONFLICT = "Conflict"
NO_CLOSED_FORM = "NoClosedForm"


def theorem_by_id(tid: str) -> TheoremCase:
    """Accepts 'T-B4.3', 'T-B4-case-3' or 'T-B4 case 3'."""
    norm = tid.strip().replace(" case ", ".").replace("-case-", ".").replace("_case_", ".")
    for t in THEOREMS:
        if t.id == norm:
            return t
    raise KeyError(f"unknown theorem case {tid!r}")


@dataclass
class TheoremVerdict:
    matched: list[tuple[str, int]]
    status: str
    conditions: list[str] = field(default_factory=list)

    @property
    def predicted(self) -> int | None:
        if self.status in (UNIQUE, MULTIPLE):
            return self.matched[0][1]
        return None

    def to_dict(self) -> dict:
        return {"matched": [{"id": i, "predicted": v} for i, v in self.matched],
                "id": self.matched[0][0] if self.matched else None,
                "predicted": self.predicted, "status": self.status,
                "conditions": list(self.conditions)}

    @classmethod
    def from_dict(cls, d: dict) -> "TheoremVerdict":
        return cls([(m["id"], m["predicted"]) for m in d["matched"]], d["status"], list(d["conditions"]))


def lc_theorem(params: SequenceParams) -> TheoremVerdict:
    p, q, r = params.p, params.q, params.r
    hits = [t for t in THEOREMS if t.matches(p, q, r)]
    matched = [(t.id, t.formula(p, q)) for t in hits]
    conds = [t.condition(p, q) for t in hits]
    if not matched:
        status = NO_CLOSED_FORM
    elif len(matched) == 1:
        status = UNIQUE
    elif len({v for _, v in matched}) == 1:
        status = MULTIPLE
    else:
        status = CONFLICT
    return TheoremVerdict(matched, status, conds)


# --------------------------------------------------------------------------
# combined report

METHODS = ("gcd", "bm", "theorem")


@dataclass
class LcReport:
    params: SequenceParams
    lc_gcd: int | None
    lc_bm: int | None
    theorem: TheoremVerdict | None

    @property
    def values(self) -> list[int]:
        vals = [v for v in (self.lc_gcd, self.lc_bm) if v is not None]
        if self.theorem is not None and self.theorem.predicted is not None:
            vals.append(self.theorem.predicted)
        return vals

    @property
    def agreement(self) -> bool:
        if self.theorem is not None and self.theorem.status == CONFLICT:
            return False
        return len(set(self.values)) <= 1

    def to_dict(self) -> dict:
        pr = self.params
        return {"p": pr.p, "q": pr.q, "r": pr.r, "lc_gcd": self.lc_gcd, "lc_bm": self.lc_bm,
                "theorem": self.theorem.to_dict() if self.theorem is not None else None,
                "agree": self.agreement}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "LcReport":
        th = TheoremVerdict.from_dict(d["theorem"]) if d["theorem"] is not None else None
        return cls(validate_params(d["p"], d["q"], d["r"]), d["lc_gcd"], d["lc_bm"], th)

    CSV_HEADER = ("p", "q", "r", "lc_gcd", "lc_bm", "lc_theorem", "theorem_id", "condition")

    def csv_row(self) -> list:
        th = self.theorem
        tid = ";".join(i for i, _ in th.matched) if th is not None else ""
        cond = "; ".join(th.conditions) if th is not None else ""
        pred = th.predicted if th is not None else None
        pr = self.params
        return [pr.p, pr.q, pr.r, _blank(self.lc_gcd), _blank(self.lc_bm), _blank(pred), tid, cond]


def _blank(v):
    return "" if v is None else v


def reports_to_csv(reports: Iterable[LcReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(LcReport.CSV_HEADER)
    for rep in reports:
        w.writerow(rep.csv_row())
    return buf.getvalue()


def lc_all(params: SequenceParams, methods: Iterable[str] = METHODS) -> LcReport:
    methods = set(methods)
    unknown = methods - set(METHODS)
    if unknown:
        raise ValueError(f"unknown methods {sorted(unknown)}")
    return LcReport(
        params=params,
        lc_gcd=lc_gcd(params) if "gcd" in methods else None,
        lc_bm=lc_bm_periodic(params) if "bm" in methods else None,
        theorem=lc_theorem(params) if "theorem" in methods else None,
    )


# --------------------------------------------------------------------------
# scanning

def scan(p_range: Iterable[int], q_range: Iterable[int], r_set: Iterable[int],
         predicate: str) -> list[tuple[int, int, int]]:
    """Valid (p, q, r) whose guards satisfy the named theorem case, sorted."""
    case = theorem_by_id(predicate)
    qs = [q for q in q_range if is_prime(q)]
    rs = sorted(set(r_set))
    out = []
    for p in p_range:
        if not is_prime(p):
            continue
        for q in qs:
            for r in rs:
                try:
                    validate_params(p, q, r)
                except (ParamError, ValueError):
                    continue
                if case.matches(p, q, r):
                    out.append((p, q, r))
    return sorted(out)


def scan_verify(triples: Iterable[tuple[int, int, int]], predicate: str) -> list[tuple[int, int, int, int, int]]:
    """(p, q, r, predicted, lc_gcd) for each triple."""
    case = theorem_by_id(predicate)
    out = []
    for p, q, r in triples:
        params = validate_params(p, q, r)
        out.append((p, q, r, case.formula(p, q), lc_gcd(params)))
    return out
