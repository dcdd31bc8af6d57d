"""Exact rational arithmetic, closed rational intervals, certified square roots.

Every certified claim made by this package bottoms out here: interval
endpoints are arbitrary-precision fractions, square-root bounds are
re-verified by exact squaring before being returned, and comparisons between
intervals return an explicit UNKNOWN when the intervals overlap instead of
guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

__all__ = [
    "Rational",
    "Tri",
    "CertificationError",
    "RatInterval",
    "parse_rational",
    "format_rational",
    "decimal_string",
    "sqrt_bounds",
    "interval_sqrt",
    "certified_less",
]

# The package-wide exact number type.  fractions.Fraction already provides
# canonical form, hashing and arbitrary precision, so it is used directly.
Rational = Fraction


class CertificationError(ArithmeticError):
    """An exact certificate could not be established within the retry budget."""


class Tri(Enum):
    """Outcome of a certified comparison: provably true, provably false,
    or not decidable from the given intervals."""

    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


def parse_rational(value) -> Fraction:
    """Parse "p / q", "p/q", decimal or integer text into an exact Fraction.

    Floats are rejected: silently converting a binary float would defeat the
    point of keeping inputs exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(
            "refusing to parse a float; pass a string or use "
            "embed.round_to_rational for float coordinates"
        )
    text = str(value).strip().replace(" ", "")
    if not text:
        raise ValueError("empty rational literal")
    return Fraction(text)


def format_rational(x) -> str:
    """Render as "p / q", or just "p" for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d / %d" % (x.numerator, x.denominator)


def decimal_string(x, digits: int) -> str:
    """Exact fixed-point decimal with `digits` places (ties round to even)."""
    if digits < 0:
        raise ValueError("digits must be >= 0")
    scaled = round(Fraction(x) * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    if digits == 0:
        return "%s%d" % (sign, whole)
    return "%s%d.%s" % (sign, whole, str(frac).zfill(digits))


def _as_interval(x):
    if isinstance(x, RatInterval):
        return x
    if isinstance(x, (int, Fraction)):
        return RatInterval.point(x)
    return None


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints.

    Arithmetic follows the usual interval rules (result bounds every possible
    value of the operation over the operands), with exact endpoints so no
    outward rounding is ever needed.  Ints and Fractions mix in as point
    intervals.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order: %s > %s" % (self.lo, self.hi))

    @classmethod
    def point(cls, x) -> "RatInterval":
        x = Fraction(x)
        return cls(x, x)

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __add__(self, other):
        other = _as_interval(other)
        if other is None:
            return NotImplemented
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_interval(other)
        if other is None:
            return NotImplemented
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        other = _as_interval(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_interval(other)
        if other is None:
            return NotImplemented
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RatInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other is None:
            return NotImplemented
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return RatInterval(min(quotients), max(quotients))

    def __rtruediv__(self, other):
        other = _as_interval(other)
        if other is None:
            return NotImplemented
        return other / self

    def __str__(self):
        return "[%s, %s]" % (format_rational(self.lo), format_rational(self.hi))


def _sqrt_seed(x: Fraction, scale: int):
    """Integer seed pair (lo, hi) with lo/scale, hi/scale near sqrt(x).

    Uses the hardware square root when x fits in a float; falls back to
    integer isqrt for huge values.  The seeds are only starting points --
    sqrt_bounds re-verifies them exactly.
    """
    try:
        approx = math.sqrt(x) * scale
    except OverflowError:
        approx = math.inf
    if math.isfinite(approx):
        return math.floor(approx), math.ceil(approx)
    root = math.isqrt((x.numerator * scale * scale) // x.denominator)
    return root, root + 1


def sqrt_bounds(x, digits: int = 8) -> RatInterval:
    """Certified bounds l <= sqrt(x) <= u on a decimal grid.

    Endpoints are multiples of 10^-digits seeded from a floating square root,
    then proven correct by exact squaring; a side that fails its check is
    widened one grid step at a time, at most 3 times, before giving up with
    CertificationError.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of negative rational")
    if x == 0:
        return RatInterval.point(0)
    scale = 10**digits
    lo_i, hi_i = _sqrt_seed(x, scale)
    lo_i = max(lo_i, 0)

    for _ in range(4):
        if Fraction(lo_i, scale) ** 2 <= x:
            break
        lo_i = max(lo_i - 1, 0)
    else:
        raise CertificationError("sqrt lower bound failed verification for %s" % x)
    for _ in range(4):
        if x <= Fraction(hi_i, scale) ** 2:
            break
        hi_i += 1
    else:
        raise CertificationError("sqrt upper bound failed verification for %s" % x)
    return RatInterval(Fraction(lo_i, scale), Fraction(hi_i, scale))


def interval_sqrt(iv: RatInterval, digits: int = 8) -> RatInterval:
    """Interval extension of sqrt: bounds sqrt of every value in iv."""
    if iv.lo < 0:
        raise ValueError("interval extends below zero")
    return RatInterval(sqrt_bounds(iv.lo, digits).lo, sqrt_bounds(iv.hi, digits).hi)


def certified_less(a: RatInterval, b: RatInterval) -> Tri:
    """Is x < y provable (or refutable) for all x in a, y in b?"""
    if a.hi < b.lo:
        return Tri.TRUE
    if b.hi <= a.lo:
        return Tri.FALSE
    return Tri.UNKNOWN
