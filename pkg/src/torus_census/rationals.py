"""Exact rational scalars: parsing, formatting, and square-root bounds.

Every quantity downstream (areas, moments, capacities, volumes) is a
`fractions.Fraction`.  Floats never enter any computation: censuses,
canonical forms, and enumeration cutoffs all rely on exact comparison.

Rationals serialize as strings "p/q" in lowest terms with the sign on the
numerator; integers serialize without the denominator.  The square-root
helpers bound irrational cutoffs (sqrt of a rational) between integers using
only integer arithmetic, which is what makes the lattice-point enumeration
in :mod:`torus_census.linalg` exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction as Q

from .errors import FormatError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text: str | int | Q) -> Q:
    """Parse an exact rational from a "p/q" or integer literal.

    Integers and Fractions pass through unchanged.  Anything else (floats,
    decimal points, empty strings, whitespace-only input) is rejected.
    """
    if isinstance(text, Q):
        return text
    if isinstance(text, int):
        return Q(text)
    if not isinstance(text, str):
        raise FormatError(f"expected a rational literal, got {type(text).__name__}")
    body = text.strip()
    if not _RATIONAL_RE.match(body):
        raise FormatError(f"malformed rational literal: {text!r}")
    if "/" in body:
        num, den = body.split("/")
        return Q(int(num), int(den))
    return Q(int(body))


def format_rational(x: Q | int) -> str:
    """Format an exact rational as "p/q" in lowest terms ("p" if integral)."""
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def floor_sqrt(x: Q | int) -> int:
    """Largest integer m with m*m <= x, for rational x >= 0."""
    x = Q(x)
    if x < 0:
        raise ValueError("floor_sqrt of a negative rational")
    # floor(sqrt(n/d)) == floor(sqrt(n*d)) // d, exactly.
    return math.isqrt(x.numerator * x.denominator) // x.denominator


def _at_most_sqrt(t: Q, q: Q) -> bool:
    """Exact test for t <= sqrt(q), with q >= 0."""
    return t <= 0 or t * t <= q


def floor_sqrt_plus(q: Q, c: Q) -> int:
    """Largest integer m with m <= sqrt(q) + c, for rational q >= 0."""
    m = floor_sqrt(q) + math.floor(c)
    while _at_most_sqrt(Q(m + 1) - c, q):
        m += 1
    while not _at_most_sqrt(Q(m) - c, q):
        m -= 1
    return m


def ceil_rational(x: Q) -> int:
    """Smallest integer >= x."""
    return -((-x.numerator) // x.denominator)
