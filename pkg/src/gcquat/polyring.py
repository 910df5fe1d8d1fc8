"""Dense univariate polynomials over a prime field GF(r).

Coefficients live in ascending-degree int64 numpy arrays, trimmed so the
last entry is nonzero (the zero polynomial is the empty array).  The
module-level ``_``-prefixed functions work on raw arrays and are what the
heavy algorithms use; :class:`FieldPoly` wraps them with operators and a
modulus check.

Multiplication switches from ``np.convolve`` to a floating point FFT
above a size threshold, splitting coefficients into halves when the
product would be too large for exact rounding.  Division uses Newton
iteration for long quotients, and the gcd runs the half-gcd recursion
with a plain Euclidean base case.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence

import numpy as np

from .errors import BothZero, ModulusMismatch, PolyDivisionByZero

# Below these sizes the quadratic routines win.
MUL_CUTOFF = 96
DIV_NEWTON_CUTOFF = 96
HGCD_CUTOFF = 160

# Largest convolution term sum that float64 FFT rounding reproduces exactly
# with a wide safety margin.
_FFT_EXACT = 2**36

_EMPTY = np.zeros(0, dtype=np.int64)


# --------------------------------------------------------------------------
# raw array helpers

def _trim(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _trim_fast(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def _deg(a: np.ndarray) -> int:
    return len(a) - 1


def _norm(a, r: int) -> np.ndarray:
    return _trim_fast(np.asarray(a, dtype=np.int64) % r)


def _add(a: np.ndarray, b: np.ndarray, r: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] += b
    out %= r
    return _trim(out)


def _sub(a: np.ndarray, b: np.ndarray, r: int) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    out %= r
    return _trim(out)


def _scale(a: np.ndarray, c: int, r: int) -> np.ndarray:
    c %= r
    if c == 0:
        return _EMPTY
    return a * c % r


def _mul_schoolbook(a: np.ndarray, b: np.ndarray, r: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return _EMPTY
    # np.convolve on int64 is exact: each term < min(len)*(r-1)^2 < 2^63.
    return _trim(np.convolve(a, b) % r)


def _fft_conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a) + len(b) - 1
    size = 1 << (n - 1).bit_length()
    fa = np.fft.rfft(a.astype(np.float64), size)
    fb = np.fft.rfft(b.astype(np.float64), size)
    return np.rint(np.fft.irfft(fa * fb, size)[:n]).astype(np.int64)


def _mul_fft(a: np.ndarray, b: np.ndarray, r: int) -> np.ndarray:
    bound = min(len(a), len(b)) * (r - 1) ** 2
    if bound < _FFT_EXACT:
        return _trim(_fft_conv(a, b) % r)
    # Split c = hi * base + lo so each partial convolution stays exact.
    shift = ((r - 1).bit_length() + 1) // 2
    base = 1 << shift
    a_lo, a_hi = a & (base - 1), a >> shift
    b_lo, b_hi = b & (base - 1), b >> shift
    lo = _fft_conv(a_lo, b_lo) % r
    hi = _fft_conv(a_hi, b_hi) % r
    mid = (_fft_conv(a_lo + a_hi, b_lo + b_hi) - lo - hi) % r
    bm = base % r
    return _trim((hi * (bm * bm % r) + mid * bm + lo) % r)


def _mul(a: np.ndarray, b: np.ndarray, r: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return _EMPTY
    if min(len(a), len(b)) < MUL_CUTOFF:
        return _mul_schoolbook(a, b, r)
    return _mul_fft(a, b, r)


def _inv_series(f: np.ndarray, n: int, r: int) -> np.ndarray:
    """g with f*g = 1 mod x^n; requires f[0] != 0."""
    g = np.array([pow(int(f[0]), -1, r)], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        fg = _mul(f[:k], g, r)[:k]
        # g <- g * (2 - f g) mod x^k
        e = np.zeros(k, dtype=np.int64)
        e[: len(fg)] = -fg
        e[0] += 2
        g = _mul(g, e % r, r)[:k]
        g = np.concatenate([g, np.zeros(k - len(g), dtype=np.int64)])
    return g[:n]


def _divmod_long(a: np.ndarray, b: np.ndarray, r: int) -> tuple[np.ndarray, np.ndarray]:
    lb = len(b)
    la = len(a)
    inv = pow(int(b[-1]), -1, r)
    rem = a.copy()
    quo = np.zeros(la - lb + 1, dtype=np.int64)
    if lb == 1:
        return a * inv % r, _EMPTY
    for i in range(la - lb, -1, -1):
        c = int(rem[i + lb - 1]) * inv % r
        if c:
            quo[i] = c
            seg = rem[i : i + lb]
            seg -= c * b
            seg %= r
    return _trim(quo), _trim(rem[: lb - 1])


def _divmod_newton(a: np.ndarray, b: np.ndarray, r: int) -> tuple[np.ndarray, np.ndarray]:
    dq = len(a) - len(b)
    rb = b[::-1]
    ra = a[::-1][: dq + 1]
    inv = _inv_series(rb, dq + 1, r)
    rq = _mul(ra, inv, r)[: dq + 1]
    rq = np.concatenate([rq, np.zeros(dq + 1 - len(rq), dtype=np.int64)])
    quo = _trim(rq[::-1].copy())
    rem = _sub(a, _mul(quo, b, r), r)
    return quo, rem


def _divmod(a: np.ndarray, b: np.ndarray, r: int) -> tuple[np.ndarray, np.ndarray]:
    if len(b) == 0:
        raise PolyDivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return _EMPTY, a
    dq = len(a) - len(b)
    if dq < DIV_NEWTON_CUTOFF or len(b) < DIV_NEWTON_CUTOFF:
        return _divmod_long(a, b, r)
    return _divmod_newton(a, b, r)


def _monic(a: np.ndarray, r: int) -> np.ndarray:
    if len(a) == 0:
        return a
    return a * pow(int(a[-1]), -1, r) % r


# 2x2 polynomial matrices are tuples (m00, m01, m10, m11).

def _identity() -> tuple:
    one = np.ones(1, dtype=np.int64)
    return (one, _EMPTY, _EMPTY, one)


def _apply(M: tuple, a: np.ndarray, b: np.ndarray, r: int) -> tuple[np.ndarray, np.ndarray]:
    m00, m01, m10, m11 = M
    return (_add(_mul(m00, a, r), _mul(m01, b, r), r),
            _add(_mul(m10, a, r), _mul(m11, b, r), r))


def _matmul(X: tuple, Y: tuple, r: int) -> tuple:
    x00, x01, x10, x11 = X
    y00, y01, y10, y11 = Y
    return (_add(_mul(x00, y00, r), _mul(x01, y10, r), r),
            _add(_mul(x00, y01, r), _mul(x01, y11, r), r),
            _add(_mul(x10, y00, r), _mul(x11, y10, r), r),
            _add(_mul(x10, y01, r), _mul(x11, y11, r), r))


def _step(M: tuple, quo: np.ndarray, r: int) -> tuple:
    """[[0, 1], [1, -quo]] @ M."""
    m00, m01, m10, m11 = M
    return (m10, m11,
            _sub(m00, _mul(quo, m10, r), r),
            _sub(m01, _mul(quo, m11, r), r))


def _hgcd_naive(a: np.ndarray, b: np.ndarray, r: int, m: int) -> tuple:
    M = _identity()
    while _deg(b) >= m:
        quo, rem = _divmod(a, b, r)
        M = _step(M, quo, r)
        a, b = b, rem
    return M


def _hgcd(a: np.ndarray, b: np.ndarray, r: int) -> tuple:
    """Matrix M with M(a, b) = (c, d) consecutive Euclidean remainders,
    deg c >= ceil(deg a / 2) > deg d.  Requires deg a > deg b."""
    n = _deg(a)
    m = (n + 1) // 2
    if _deg(b) < m:
        return _identity()
    if n < HGCD_CUTOFF:
        return _hgcd_naive(a, b, r, m)
    R = _hgcd(_trim(a[m:]), _trim(b[m:]), r)
    a, b = _apply(R, a, b, r)
    if _deg(b) < m:
        return R
    quo, rem = _divmod(a, b, r)
    R = _step(R, quo, r)
    a, b = b, rem
    k = 2 * m - _deg(a)
    S = _hgcd(_trim(a[k:]), _trim(b[k:]), r)
    return _matmul(S, R, r)


def _gcd(a: np.ndarray, b: np.ndarray, r: int) -> np.ndarray:
    if len(a) == 0 and len(b) == 0:
        raise BothZero("gcd(0, 0) is undefined")
    if len(a) < len(b):
        a, b = b, a
    if len(b) and len(a) == len(b):
        a, b = b, _divmod(a, b, r)[1]
    while len(b):
        if _deg(a) >= HGCD_CUTOFF:
            a, b = _apply(_hgcd(a, b, r), a, b, r)
            if len(b) == 0:
                break
        a, b = b, _divmod(a, b, r)[1]
    return _monic(a, r)


def _gcd_euclid(a: np.ndarray, b: np.ndarray, r: int) -> np.ndarray:
    """Classical remainder chain; kept as the reference for the fast gcd."""
    if len(a) == 0 and len(b) == 0:
        raise BothZero("gcd(0, 0) is undefined")
    while len(b):
        a, b = b, _divmod_long(a, b, r)[1] if len(a) >= len(b) else a
    return _monic(a, r)


# --------------------------------------------------------------------------
# public value type

class FieldPoly:
    """Polynomial over GF(modulus) with canonical trimmed coefficients."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, coeffs: Iterable[int] | np.ndarray, modulus: int, _raw: bool = False):
        self.modulus = int(modulus)
        if _raw:
            self.coeffs = coeffs
        else:
            self.coeffs = _norm(np.fromiter(coeffs, dtype=np.int64)
                                if not isinstance(coeffs, np.ndarray) else coeffs, self.modulus)
        self.coeffs.setflags(write=False)

    @classmethod
    def _wrap(cls, arr: np.ndarray, modulus: int) -> "FieldPoly":
        return cls(arr, modulus, _raw=True)

    @classmethod
    def zero(cls, modulus: int) -> "FieldPoly":
        return cls._wrap(_EMPTY.copy(), modulus)

    @classmethod
    def monomial(cls, degree: int, modulus: int, coeff: int = 1) -> "FieldPoly":
        arr = np.zeros(degree + 1, dtype=np.int64)
        arr[degree] = coeff
        return cls(arr, modulus)

    @classmethod
    def x_pow_minus_one(cls, n: int, modulus: int) -> "FieldPoly":
        arr = np.zeros(n + 1, dtype=np.int64)
        arr[0] = modulus - 1
        arr[n] = 1
        return cls._wrap(arr, modulus)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __getitem__(self, i: int) -> int:
        return int(self.coeffs[i]) if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def _check(self, other: "FieldPoly") -> None:
        if not isinstance(other, FieldPoly):
            raise TypeError(f"expected FieldPoly, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"GF({self.modulus}) vs GF({other.modulus})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldPoly):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.modulus, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        if self.degree > 8:
            return f"FieldPoly(deg={self.degree}, GF({self.modulus}))"
        return f"FieldPoly({self.tolist()}, GF({self.modulus}))"

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        self._check(other)
        return self._wrap(_add(self.coeffs, other.coeffs, self.modulus), self.modulus)

    def __sub__(self, other: "FieldPoly") -> "FieldPoly":
        self._check(other)
        return self._wrap(_sub(self.coeffs, other.coeffs, self.modulus), self.modulus)

    def __neg__(self) -> "FieldPoly":
        return self._wrap(_trim(-self.coeffs % self.modulus), self.modulus)

    def __mul__(self, other: "FieldPoly | int") -> "FieldPoly":
        if isinstance(other, (int, np.integer)):
            return self._wrap(_scale(self.coeffs, int(other), self.modulus), self.modulus)
        self._check(other)
        return self._wrap(_mul(self.coeffs, other.coeffs, self.modulus), self.modulus)

    __rmul__ = __mul__

    def __divmod__(self, other: "FieldPoly") -> tuple["FieldPoly", "FieldPoly"]:
        self._check(other)
        quo, rem = _divmod(self.coeffs, other.coeffs, self.modulus)
        return self._wrap(quo, self.modulus), self._wrap(rem, self.modulus)

    def __floordiv__(self, other: "FieldPoly") -> "FieldPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FieldPoly") -> "FieldPoly":
        return divmod(self, other)[1]

    def monic(self) -> "FieldPoly":
        return self._wrap(_monic(self.coeffs, self.modulus), self.modulus)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.tolist()):
            acc = (acc * x + c) % self.modulus
        return acc

    def to_json(self) -> str:
        return json.dumps(self.tolist())

    @classmethod
    def from_json(cls, text: str, modulus: int) -> "FieldPoly":
        return cls(json.loads(text), modulus)


def _pair(a: FieldPoly, b: FieldPoly) -> int:
    a._check(b)
    return a.modulus


def poly_add(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    return a + b


def poly_sub(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    return a - b


def poly_mul(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    return a * b


def poly_mul_schoolbook(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    r = _pair(a, b)
    return FieldPoly._wrap(_mul_schoolbook(a.coeffs, b.coeffs, r), r)


def poly_mul_fast(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    """Always take the FFT path, whatever the sizes."""
    r = _pair(a, b)
    if a.is_zero() or b.is_zero():
        return FieldPoly.zero(r)
    return FieldPoly._wrap(_mul_fft(a.coeffs, b.coeffs, r), r)


def poly_divmod(a: FieldPoly, b: FieldPoly) -> tuple[FieldPoly, FieldPoly]:
    return divmod(a, b)


def poly_rem(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    return a % b


def poly_gcd(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    """Monic gcd via the half-gcd recursion."""
    r = _pair(a, b)
    return FieldPoly._wrap(_gcd(a.coeffs, b.coeffs, r), r)


def poly_gcd_euclid(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    r = _pair(a, b)
    return FieldPoly._wrap(_gcd_euclid(a.coeffs, b.coeffs, r), r)


def poly_powmod(base: FieldPoly, e: int, mod: FieldPoly) -> FieldPoly:
    """base**e mod `mod` by square-and-multiply (e may be a big int)."""
    _pair(base, mod)
    r = mod.modulus
    m = mod.coeffs
    result = np.ones(1, dtype=np.int64) if mod.degree > 0 else _EMPTY
    b = _divmod(base.coeffs, m, r)[1]
    while e > 0:
        if e & 1:
            result = _divmod(_mul(result, b, r), m, r)[1]
        e >>= 1
        if e:
            b = _divmod(_mul(b, b, r), m, r)[1]
    return FieldPoly._wrap(result, r)


def generating_polynomial(seq, r: int | None = None) -> FieldPoly:
    """G_s(x) = sum_t s(t) x^t with coefficients reduced mod r."""
    r = seq.params.r if r is None else r
    return FieldPoly(np.asarray(seq.values, dtype=np.int64), r)


def generating_polynomial_structured(params, r: int | None = None) -> FieldPoly:
    """Same polynomial assembled from the enumerated classes: 2 at x^T,
    1 on the D_1 union, 2 on the 2D_0 union, 3 on the 2D_1 union."""
    from .cyclotomy import Cell, enumerate_class

    r = params.r if r is None else r
    coeffs = np.zeros(params.N, dtype=np.int64)
    coeffs[params.T] = 2
    weights = {
        1: (Cell.D1_2T, Cell.Q_D1_2P, Cell.P_D1_2Q),
        2: (Cell.TWO_D0_T, Cell.TWOQ_D0_P, Cell.TWOP_D0_Q),
        3: (Cell.TWO_D1_T, Cell.TWOQ_D1_P, Cell.TWOP_D1_Q),
    }
    for w, cells in weights.items():
        for c in cells:
            coeffs[enumerate_class(params, c)] = w
    return FieldPoly(coeffs, r)


def poly_from_roots(roots: Sequence[int], r: int) -> FieldPoly:
    out = FieldPoly([1], r)
    for z in roots:
        out = out * FieldPoly([-z, 1], r)
    return out
