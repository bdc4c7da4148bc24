"""Exact rationals.

Thin contract layer over fractions.Fraction: construction that rejects zero
denominators with a library error, "p/q" text parsing, and deterministic
formatting. Arithmetic and comparison are Fraction's own; nothing here
introduces floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import SpecError, ZeroDenominatorError

__all__ = ["Rational", "make_rational", "parse_rational", "format_rational"]

Rational = Fraction

_RAT_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def make_rational(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDenominatorError(f"{num}/0 is not a rational")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text.strip())
    if not m:
        raise SpecError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return make_rational(num, den)


def format_rational(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"
