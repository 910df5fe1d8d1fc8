"""Exception types shared across the package."""


class GcquatError(Exception):
    """Base class for every error raised by this package."""


class ParamError(GcquatError, ValueError):
    """A (p, q, r) triple violates one of the standing assumptions.

    The class name of the concrete subclass doubles as the rejection
    code printed by the command line tool.
    """


class NotPrime(ParamError):
    pass


class EqualPrimes(ParamError):
    pass


class GcdNotTwo(ParamError):
    pass


class BadR(ParamError):
    pass


class Inconsistent(GcquatError, ValueError):
    """A pair of congruences has no common solution."""


class ModulusMismatch(GcquatError, ValueError):
    pass


class PolyDivisionByZero(GcquatError, ZeroDivisionError):
    pass


class BothZero(GcquatError, ValueError):
    pass


class DegreeTooLarge(GcquatError):
    def __init__(self, m, cap):
        super().__init__(f"extension degree m={m} exceeds cap {cap}")
        self.m = m
        self.cap = cap


class UnsupportedCase(GcquatError):
    """No lemma in the value tables covers the requested character case."""
