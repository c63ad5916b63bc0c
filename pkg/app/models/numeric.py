"""
Exact rational helpers.

Scalars are ``fractions.Fraction``. Fractional powers stay exact when the
base is a perfect power, otherwise they fall back to floats (for reporting)
or to rational brackets (for decisions).
"""
import math
import re
from fractions import Fraction
from typing import Tuple, Union

from app.errors import InvalidArgumentError

Number = Union[Fraction, float]
RationalLike = Union[Fraction, int, str]

RATIONAL_TEXT = re.compile(r"[+-]?\d+(/\d+)?")


def to_rational(value: RationalLike) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidArgumentError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not RATIONAL_TEXT.fullmatch(value.strip()):
            raise InvalidArgumentError(f"not an integer or p/q string: {value!r}")
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidArgumentError(f"not a rational: {value!r}") from e
    raise InvalidArgumentError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def integer_root(n: int, k: int) -> int:
    """Largest integer r with r**k <= n (n >= 0)."""
    if n < 0:
        raise InvalidArgumentError("integer_root needs a nonnegative radicand")
    if n < 2:
        return n
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def exact_root(x: Fraction, k: int) -> Union[Fraction, None]:
    """The k-th root of x when it is rational, else None."""
    if x < 0:
        return None
    p = integer_root(x.numerator, k)
    q = integer_root(x.denominator, k)
    if p ** k == x.numerator and q ** k == x.denominator:
        return Fraction(p, q)
    return None


def power(x: RationalLike, e: RationalLike) -> Number:
    """x**e, exact when possible."""
    x = to_rational(x)
    e = to_rational(e)
    if x == 0:
        if e <= 0:
            raise InvalidArgumentError("zero raised to a nonpositive power")
        return Fraction(0)
    if e.denominator == 1:
        return x ** e.numerator
    root = exact_root(x, e.denominator)
    if root is not None:
        return root ** e.numerator
    return float(x) ** float(e)


def power_bounds(x: RationalLike, e: RationalLike, digits: int = 30) -> Tuple[Fraction, Fraction]:
    """
    Rational bracket lo <= x**e <= hi with hi - lo <= 10**-digits * (scale).

    Both ends are exact when x**e is rational.
    """
    x = to_rational(x)
    e = to_rational(e)
    if x < 0:
        raise InvalidArgumentError("power_bounds needs a nonnegative base")
    if x == 0:
        return Fraction(0), Fraction(0)
    exact = power(x, e)
    if isinstance(exact, Fraction):
        return exact, exact
    a, b = e.numerator, e.denominator
    base = x ** abs(a)
    scale = 10 ** digits
    # floor((p/q * scale**b) ** (1/b)) / scale
    lo_num = integer_root(base.numerator * scale ** b // base.denominator, b)
    lo = Fraction(lo_num, scale)
    hi = Fraction(lo_num + 1, scale)
    if a < 0:
        lo, hi = (1 / hi, 1 / lo) if lo > 0 else (1 / hi, Fraction(10) ** (2 * digits))
    return lo, hi


def floored_log2(x: RationalLike) -> Number:
    """max(1, log2 x); exact when x is a power of two."""
    x = to_rational(x)
    if x <= 2:
        return Fraction(1)
    if x.denominator == 1 and x.numerator & (x.numerator - 1) == 0:
        return Fraction(x.numerator.bit_length() - 1)
    return max(1.0, math.log2(x))


def as_float(value: Number) -> float:
    return float(value)
