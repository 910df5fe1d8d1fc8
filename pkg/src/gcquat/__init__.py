"""Quaternary generalized cyclotomic sequences of period 2pq and their
linear complexity over GF(r)."""

from .cyclotomy import Cell, QuaternarySequence, classify, enumerate_class, generate_sequence, pq_pattern
from .errors import (
    BadR, DegreeTooLarge, EqualPrimes, GcdNotTwo, GcquatError, NotPrime, ParamError, UnsupportedCase,
)
from .extfield import build_field, build_field_for, char_funcs, char_params, evaluate_gs_at, zero_census
from .lincomp import LcReport, TheoremVerdict, lc_all, lc_bm, lc_gcd, lc_theorem, scan
from .modnum import SequenceParams, legendre, validate_params
from .polyring import FieldPoly, generating_polynomial, poly_gcd

__all__ = [
    "BadR", "Cell", "DegreeTooLarge", "EqualPrimes", "FieldPoly", "GcdNotTwo", "GcquatError",
    "LcReport", "NotPrime", "ParamError", "QuaternarySequence", "SequenceParams", "TheoremVerdict",
    "UnsupportedCase", "build_field", "build_field_for", "char_funcs", "char_params", "classify",
    "enumerate_class", "evaluate_gs_at", "generate_sequence", "generating_polynomial", "lc_all",
    "lc_bm", "lc_gcd", "lc_theorem", "legendre", "pq_pattern", "poly_gcd", "scan", "validate_params",
    "zero_census",
]
