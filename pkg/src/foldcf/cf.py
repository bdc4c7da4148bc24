"""Finite continued fractions over exact rationals.

A CF is an integer part a0 plus a word of partial quotients. Canonical words
have every entry >= 1 and the last entry >= 2; raw words produced by folding
may transiently contain zeros, which strip_zeros removes by the concatenation
rule [..., A, 0, B, ...] -> [..., A+B, ...] without changing the value.

Text form is '[a0]' or '[a0;w1,w2,...,wn]'. The length of a CF is the length
of its word; the integer part does not count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import CFParseError, MalformedWordError

__all__ = [
    "CF",
    "Convergent",
    "parse_cf",
    "format_cf",
    "cf_from_rational",
    "cf_value",
    "convergents",
    "strip_zeros",
    "canonicalize",
    "determinant_ok",
]


@dataclass(frozen=True)
class CF:
    a0: int
    word: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_cf(self)


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int


_CF_RE = re.compile(
    r"^\s*\[\s*(-?\d+)\s*(?:;\s*(\d+(?:\s*,\s*\d+)*)\s*)?\]\s*$"
)


def parse_cf(text: str) -> CF:
    m = _CF_RE.match(text)
    if not m:
        raise CFParseError(f"not a continued fraction literal: {text!r}")
    a0 = int(m.group(1))
    if m.group(2) is None:
        return CF(a0)
    word = tuple(int(tok) for tok in m.group(2).replace(" ", "").split(","))
    return CF(a0, word)


def format_cf(cf: CF) -> str:
    if not cf.word:
        return f"[{cf.a0}]"
    return f"[{cf.a0};{','.join(str(a) for a in cf.word)}]"


def cf_from_rational(r: Fraction) -> CF:
    """Canonical expansion by Euclid's algorithm; last entry >= 2 when nonempty."""
    a0 = floor(r)
    frac = r - a0
    word: list[int] = []
    while frac:
        recip = 1 / frac
        a = floor(recip)
        word.append(a)
        frac = recip - a
    return CF(a0, tuple(word))


def _check_entries(cf: CF) -> None:
    for a in cf.word:
        if a < 0:
            raise MalformedWordError(f"negative partial quotient {a} in {format_cf(cf)}")


def convergents(cf: CF) -> list[Convergent]:
    """All convergents p_j/q_j for j = -2..n, seeds included.

    Seeds are p_{-2}/q_{-2} = 0/1 and p_{-1}/q_{-1} = 1/0, so that
    p_j = a_j p_{j-1} + p_{j-2} holds from j = 0 with a_0 the integer part.
    """
    _check_entries(cf)
    out = [Convergent(-2, 0, 1), Convergent(-1, 1, 0)]
    p_prev, q_prev = 0, 1
    p_cur, q_cur = 1, 0
    for j, a in enumerate((cf.a0,) + cf.word):
        p_cur, p_prev = a * p_cur + p_prev, p_cur
        q_cur, q_prev = a * q_cur + q_prev, q_cur
        out.append(Convergent(j, p_cur, q_cur))
    return out


def cf_value(cf: CF) -> Fraction:
    _check_entries(cf)
    p_prev, q_prev = 0, 1
    p_cur, q_cur = 1, 0
    for a in (cf.a0,) + cf.word:
        p_cur, p_prev = a * p_cur + p_prev, p_cur
        q_cur, q_prev = a * q_cur + q_prev, q_cur
    if q_cur == 0:
        raise MalformedWordError(f"no finite value: {format_cf(cf)}")
    return Fraction(p_cur, q_cur)


def strip_zeros(cf: CF) -> tuple[CF, int]:
    """Remove zero partial quotients by concatenation; value is preserved.

    Interior [..., A, 0, B, ...] merges to [..., A+B, ...]; a zero right after
    the integer part folds the next entry into a0; a trailing [..., A, 0]
    drops both. Returns the cleaned CF and the number of merges performed.
    Raises MalformedWordError on adjacent zeros or a word that is a lone zero.
    """
    _check_entries(cf)
    a0 = cf.a0
    word = list(cf.word)
    merges = 0
    while True:
        try:
            i = word.index(0)
        except ValueError:
            break
        if i + 1 < len(word) and word[i + 1] == 0:
            raise MalformedWordError(f"adjacent zeros in {format_cf(cf)}")
        if i == len(word) - 1:
            if i == 0:
                raise MalformedWordError(f"dangling zero in {format_cf(cf)}")
            word = word[: i - 1]
        elif i == 0:
            a0 += word[1]
            word = word[2:]
        else:
            word = word[: i - 1] + [word[i - 1] + word[i + 1]] + word[i + 2 :]
        merges += 1
    return CF(a0, tuple(word)), merges


def canonicalize(cf: CF) -> CF:
    """Zero-free word with last entry >= 2 (or empty); unique per value."""
    cleaned, _ = strip_zeros(cf)
    word = cleaned.word
    if word and word[-1] == 1:
        if len(word) == 1:
            return CF(cleaned.a0 + 1)
        word = word[:-2] + (word[-2] + 1,)
    return CF(cleaned.a0, word)


def determinant_ok(cf: CF) -> bool:
    """p_j q_{j-1} - p_{j-1} q_j == (-1)^{j-1} at every index j >= -1."""
    cs = convergents(cf)
    for prev, cur in zip(cs, cs[1:]):
        expect = 1 if (cur.index - 1) % 2 == 0 else -1
        if cur.p * prev.q - prev.p * cur.q != expect:
            return False
    return True
