"""Certified ceilings of pseudo-polynomial growth laws.

alpha_n = ceil( exp(C * nu^n) * P(u_n, u_{n+1}) ) where P(X, Y) is a finite
sum of terms c * X^r * Y^s with positive real coefficients and nonnegative
real exponents. The result must be the exact integer ceiling, so evaluation
runs twice per precision level under directed rounding (once rounding every
operation down, once up). Every operation in the chain, conversion, product
of positives, sum of positives, exp, log of arguments >= 1, and powers with
positive base, is nondecreasing in its operands, so the two runs bracket the
true value. Both endpoints are extracted as exact rationals; when their
ceilings agree that common integer is certified correct, since the ceiling
function is monotone. Otherwise the precision doubles, from 64 bits up to a
65536-bit cap, after which PrecisionExhausted is raised.

Two caveats are inherent to this design. A true value sitting exactly on an
integer can never be certified from an inexact chain (both neighbours stay
reachable at every precision); and all real parameters are binary doubles
taken at face value. The first case matters only for contrived inputs: when
C = 0 and every coefficient and exponent is integral the evaluator switches
to exact integer arithmetic, cross-checks the result against a directed
enclosure, and returns it without touching the ladder.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

import gmpy2

from .errors import PrecisionExhaustedError, SpecError

__all__ = ["PolyTerm", "MuParams", "alpha_eval", "PREC_START", "PREC_MAX"]

PREC_START = 64
PREC_MAX = 1 << 16


def _is_integral(x: float | int) -> bool:
    return isinstance(x, int) or (isinstance(x, float) and x.is_integer())


@dataclass(frozen=True)
class PolyTerm:
    """One monomial c * X^r * Y^s; c > 0, r >= 0, s >= 0."""

    c: float
    r: float
    s: float


@dataclass(frozen=True)
class MuParams:
    """Growth-law parameters: exp(C * nu^n) times a (pseudo-)polynomial."""

    C: float = 0.0
    nu: float = 1.0
    terms: tuple[PolyTerm, ...] = (PolyTerm(1.0, 0.0, 0.0),)

    def __post_init__(self):
        if self.C < 0:
            raise SpecError("C must be nonnegative")
        if self.nu <= 0:
            raise SpecError("nu must be positive")
        if not self.terms:
            raise SpecError("pseudo-polynomial needs at least one term")
        seen = set()
        for t in self.terms:
            if t.c <= 0:
                raise SpecError("coefficients must be positive")
            if t.r < 0 or t.s < 0:
                raise SpecError("exponents must be nonnegative")
            if (t.r, t.s) in seen:
                raise SpecError(f"duplicate exponent pair ({t.r}, {t.s})")
            seen.add((t.r, t.s))

    @property
    def r_max(self) -> float:
        return max(t.r for t in self.terms)

    @property
    def s_max(self) -> float:
        return max(t.s for t in self.terms)

    @property
    def is_integral(self) -> bool:
        return self.C == 0 and all(
            _is_integral(t.c) and _is_integral(t.r) and _is_integral(t.s)
            for t in self.terms
        )


def _pow_directed(base, e: float):
    # context rounding applies to every operation here
    if _is_integral(e):
        return base ** int(e)
    return gmpy2.exp(gmpy2.mpfr(e) * gmpy2.log(base))


def _eval_directed(params: MuParams, n: int, u: int, v: int, prec: int, rounding) -> Fraction:
    ctx = gmpy2.context(precision=prec, round=rounding)
    with ctx:
        mu = gmpy2.mpfr(u)
        mv = gmpy2.mpfr(v)
        total = gmpy2.mpfr(0)
        for t in params.terms:
            term = gmpy2.mpfr(t.c)
            if t.r:
                term *= _pow_directed(mu, t.r)
            if t.s:
                term *= _pow_directed(mv, t.s)
            total += term
        if params.C:
            total *= gmpy2.exp(gmpy2.mpfr(params.C) * gmpy2.mpfr(params.nu) ** n)
        if not gmpy2.is_finite(total):
            raise PrecisionExhaustedError(
                f"enclosure endpoint overflowed at precision {prec}"
            )
        q = gmpy2.mpq(total)
        return Fraction(int(q.numerator), int(q.denominator))


def _eval_exact(params: MuParams, u: int, v: int) -> int:
    total = 0
    for t in params.terms:
        total += int(t.c) * u ** int(t.r) * v ** int(t.s)
    return total


def alpha_eval(
    params: MuParams, n: int, u_n: int, u_next: int, *, force_ladder: bool = False
) -> int:
    """Exact ceil(exp(C * nu^n) * P(u_n, u_next)) or PrecisionExhausted.

    Arguments must satisfy n >= 1 and u_n, u_next >= 1 so the monotone
    bracketing argument applies. force_ladder skips the integer fast path,
    so integral inputs certify through the interval machinery instead (they
    terminate once the precision covers the value exactly); it exists so the
    two paths can be checked against each other.
    """
    if n < 1:
        raise SpecError(f"alpha index must be >= 1, got {n}")
    if u_n < 1 or u_next < 1:
        raise SpecError("pseudo-polynomial arguments must be >= 1")
    if params.is_integral and not force_ladder:
        value = _eval_exact(params, u_n, u_next)
        lo = _eval_directed(params, n, u_n, u_next, PREC_START, gmpy2.RoundDown)
        hi = _eval_directed(params, n, u_n, u_next, PREC_START, gmpy2.RoundUp)
        if not (lo <= value <= hi):
            raise AssertionError(
                f"exact value {value} escapes its enclosure [{lo}, {hi}]"
            )
        return value
    prec = PREC_START
    lo = hi = None
    while prec <= PREC_MAX:
        lo = _eval_directed(params, n, u_n, u_next, prec, gmpy2.RoundDown)
        hi = _eval_directed(params, n, u_n, u_next, prec, gmpy2.RoundUp)
        c_lo, c_hi = ceil(lo), ceil(hi)
        if c_lo == c_hi:
            return c_lo
        prec *= 2
    raise PrecisionExhaustedError(
        f"ceiling not certified up to {PREC_MAX} bits; last enclosure "
        f"[{float(lo)}, {float(hi)}]"
    )
