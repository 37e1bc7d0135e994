"""Exception types raised by the library.

All of them derive from ``ValueError`` so callers that only care about
"bad input" can catch a single class.
"""


class LucasGcdError(ValueError):
    pass


class NotCoprimeError(LucasGcdError):
    """gcd(a1, a2) != 1, or a progression whose residue shares a factor with its modulus."""


class DegenerateError(LucasGcdError):
    pass


class NotCoprimeToA2Error(LucasGcdError):
    pass


class ResourceLimitError(LucasGcdError):
    pass


class OutOfRangeError(LucasGcdError):
    pass


class LambdaTooLargeError(LucasGcdError):
    pass


class OracleTooLargeError(LucasGcdError):
    pass


class NotFoundError(LucasGcdError):
    pass


class InvalidPrimeError(LucasGcdError):
    pass
