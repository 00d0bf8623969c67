"""Extended nonnegative rational values.

Every rank produced by the catalog is an exact ``fractions.Fraction``; the
distinguished value ``INF`` only shows up in direct-limit bookkeeping.  The
subtraction helper refuses to form ``inf - inf``, so that guard lives in one
place.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, SylrankError


class Infinity:
    """Singleton for the value +infinity; compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("sylrank-inf")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = Infinity()

# A rank value: exact nonnegative rational, or +infinity.
ExtVal = Fraction | Infinity


def is_finite(v: ExtVal) -> bool:
    return not isinstance(v, Infinity)


def ext_add(a: ExtVal, b: ExtVal) -> ExtVal:
    if isinstance(a, Infinity) or isinstance(b, Infinity):
        return INF
    return a + b


def ext_sub(a: ExtVal, b: ExtVal) -> ExtVal:
    """a - b with the extended-value guards: b must be finite unless a is."""
    if isinstance(b, Infinity):
        raise SylrankError("cannot subtract +inf (would form inf - inf or a negative value)")
    if isinstance(a, Infinity):
        return INF
    return a - b


def fmt_value(v: ExtVal) -> str:
    """Render a value as exact fraction text 'p/q', or 'inf'."""
    if isinstance(v, Infinity):
        return "inf"
    f = Fraction(v)
    return f"{f.numerator}/{f.denominator}"


def parse_value(text: str) -> ExtVal:
    text = text.strip()
    if text == "inf":
        return INF
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad value {text!r}: {exc}") from exc
