"""Shared enumeration helpers for the test modules."""

from gcquat.errors import ParamError
from gcquat.modnum import is_prime, validate_params

SMALL_PRIMES = [n for n in range(3, 400) if is_prime(n)]


def valid_pairs(max_pq: int):
    out = []
    for p in SMALL_PRIMES:
        for q in SMALL_PRIMES:
            if p * q > max_pq:
                continue
            try:
                validate_params(p, q, 5 if 5 not in (p, q) else 7)
            except ParamError:
                continue
            out.append((p, q))
    return out


def valid_triples(max_pq: int, rs):
    out = []
    for p, q in valid_pairs(max_pq):
        for r in rs:
            if r not in (p, q):
                out.append((p, q, r))
    return out


def _solvable_mod(A, b, r):
    """Whether A c = b has a solution over GF(r), by Gaussian elimination."""
    import numpy as np
    M = np.concatenate([A, b[:, None]], axis=1) % r
    rows, cols = M.shape
    rank = 0
    for col in range(cols - 1):
        piv = next((i for i in range(rank, rows) if M[i, col]), None)
        if piv is None:
            continue
        M[[rank, piv]] = M[[piv, rank]]
        M[rank] = M[rank] * pow(int(M[rank, col]), -1, r) % r
        others = np.arange(rows) != rank
        M[others] = (M[others] - np.outer(M[others, col], M[rank])) % r
        rank += 1
    return not M[rank:, -1].any()


def brute_linear_complexity(s, r):
    """Least L such that some c_1..c_L satisfy s[i] = sum c_j s[i-j] for L <= i < n."""
    import numpy as np
    s = np.asarray(s, dtype=np.int64) % r
    n = len(s)

    def ok(L):
        if L >= n:
            return True
        if L == 0:
            return not s.any()
        A = np.array([s[i - L:i][::-1] for i in range(L, n)], dtype=np.int64)
        return _solvable_mod(A, s[L:].copy(), r)

    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo
