"""
Error hierarchy for fanoscan
"""


class FanoscanError(ValueError):
    """Base class for every input or domain error raised by fanoscan"""


class InvalidModulusError(FanoscanError):
    """A residue was requested modulo a non-positive integer"""


class InvalidIndexError(FanoscanError):
    """A local index was negative"""


class OutOfRangeError(FanoscanError):
    """A divisor multiple s fell outside the open interval (0, q)"""


class InvalidConfigError(FanoscanError):
    """A search or scan was configured with unusable parameters"""


class InvalidContextError(FanoscanError):
    """A Harder-Narasimhan shape (l, r1, p, q) violates its constraints"""


class InvalidInputError(FanoscanError):
    """A verifier was called outside its precondition"""


class InvalidPointError(FanoscanError):
    """An orbifold point (r, b) violates gcd(r, b) = 1, 2b <= r, r >= 2 or b >= 1"""


class BasketSyntaxError(FanoscanError):
    """Text could not be read as a basket, r-multiset or record"""
