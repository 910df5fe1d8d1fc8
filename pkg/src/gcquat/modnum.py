"""Elementary number theory and the validated parameter record.

Everything here works on plain Python ints.  Inputs are expected to fit
in 64 bits; the sequence period N = 2pq is additionally capped at 2**31.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import BadR, EqualPrimes, GcdNotTwo, Inconsistent, NotPrime

MAX_PERIOD = 2**31

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (adequate below 2**40 or so)."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"legendre needs an odd prime modulus, got {p}")
    a %= p
    if a == 0:
        return 0
    # Jacobi-style reduction; p stays odd throughout.
    acc, m = 1, p
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                acc = -acc
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            acc = -acc
        a %= m
    return acc if m == 1 else 0


def carmichael(n: int) -> int:
    """Carmichael function lambda(n)."""
    lam = 1
    for pr, e in factorize(n).items():
        if pr == 2:
            v = 1 if e == 1 else 2 if e == 2 else 2 ** (e - 2)
        else:
            v = (pr - 1) * pr ** (e - 1)
        lam = lam * v // gcd(lam, v)
    return lam


def mod_order(a: int, n: int) -> int:
    """Multiplicative order of a modulo n.

    Starts from lambda(n) and strips prime factors while the power
    stays equal to one.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, n) != 1:
        raise ValueError(f"gcd({a}, {n}) != 1, order undefined")
    if n == 1:
        return 1
    order = carmichael(n)
    for pr in factorize(order):
        while order % pr == 0 and pow(a, order // pr, n) == 1:
            order //= pr
    return order


def crt2(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Solve x = r1 (mod m1), x = r2 (mod m2) for possibly non-coprime moduli.

    Returns ``(x, lcm)`` with ``0 <= x < lcm``.
    """
    g = gcd(m1, m2)
    if (r1 - r2) % g:
        raise Inconsistent(f"{r1} mod {m1} and {r2} mod {m2} disagree mod {g}")
    lcm = m1 // g * m2
    m1g, m2g = m1 // g, m2 // g
    # x = r1 + m1 * t with m1 * t = r2 - r1 (mod m2)
    t = (r2 - r1) // g * pow(m1g, -1, m2g) % m2g if m2g > 1 else 0
    return (r1 + m1 * t) % lcm, lcm


def is_primitive_root(g: int, p: int) -> bool:
    if g % p == 0:
        return False
    return all(pow(g, (p - 1) // f, p) != 1 for f in factorize(p - 1))


def find_common_odd_primitive_root(p: int, q: int) -> int:
    """Smallest common primitive root of p and q, shifted by pq if even."""
    bound = p * q
    for g in range(2, bound + 2):
        if is_primitive_root(g, p) and is_primitive_root(g, q):
            return g if g % 2 else g + p * q
    raise AssertionError(f"no common primitive root of {p} and {q} below {bound}")


def pattern8(n: int) -> int:
    """n mod 8 written as one of +1, -1, +3, -3."""
    return {1: 1, 7: -1, 3: 3, 5: -3}[n % 8]


@dataclass(frozen=True)
class DerivedConstants:
    M_p: int
    M_q: int
    M_2: dict[int, int]
    inv2_p: int
    inv2_q: int
    inv2_T: int
    q_inv_p: int
    p_inv_q: int


@dataclass(frozen=True)
class SequenceParams:
    """Validated (p, q, r) together with everything derived from it."""

    p: int
    q: int
    r: int
    g: int
    x: int
    T: int
    N: int
    m: int
    consts: DerivedConstants = field(repr=False, compare=False)

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r, "g": self.g, "x": self.x,
                "T": self.T, "N": self.N, "m": self.m}


def check_pq(p: int, q: int) -> None:
    for v in (p, q):
        if v < 3 or not is_prime(v):
            raise NotPrime(f"{v} is not an odd prime")
    if p == q:
        raise EqualPrimes(f"p and q must differ (both {p})")
    if gcd(p - 1, q - 1) != 2:
        raise GcdNotTwo(f"gcd({p - 1}, {q - 1}) = {gcd(p - 1, q - 1)}, need 2")
    if 2 * p * q > MAX_PERIOD:
        raise ValueError(f"period 2*{p}*{q} exceeds {MAX_PERIOD}")


def check_r(r: int, p: int, q: int) -> None:
    if r < 5 or not is_prime(r):
        raise BadR(f"r={r} must be a prime >= 5")
    if r in (p, q):
        raise BadR(f"r={r} must differ from p and q")


def validate_params(p: int, q: int, r: int) -> SequenceParams:
    p, q, r = int(p), int(q), int(r)
    check_pq(p, q)
    check_r(r, p, q)
    T = p * q
    g = find_common_odd_primitive_root(p, q)
    x, _ = crt2(g, 2 * p, 1, 2 * q)
    consts = DerivedConstants(
        M_p=q * pow(q, -1, p) % T,
        M_q=p * pow(p, -1, q) % T,
        M_2={u: u * pow(u, -1, 2) % (2 * u) for u in (p, q, T)},
        inv2_p=pow(2, -1, p),
        inv2_q=pow(2, -1, q),
        inv2_T=pow(2, -1, T),
        q_inv_p=pow(q, -1, p),
        p_inv_q=pow(p, -1, q),
    )
    return SequenceParams(p=p, q=q, r=r, g=g, x=x, T=T, N=2 * T,
                          m=mod_order(r, T), consts=consts)


def placeholder_r(p: int, q: int) -> int:
    """A base-field prime for callers that only need the (p, q) structure."""
    r = 5
    while r in (p, q) or not is_prime(r):
        r += 2
    return r
