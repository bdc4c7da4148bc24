"""Folding transforms on continued fraction words.

A fold extends a CF [a0; a] of length n with a new block built from z and the
word itself, changing the value by exactly sign * (-1)^n / (z * q_n^2) where
q_n is the denominator of [a0; a]. The new denominator is exactly z * q_n^2.

With atilde = (a_1, ..., a_{n-1}, a_n - 1, 1):

    sign +1:  [a0; a, z-1, reverse(atilde)]
    sign -1:  [a0; atilde, z-1, reverse(a)]

When z = 1, or when a_n = 1 makes atilde start or end in a zero, the raw word
contains zeros; these are removed by the concatenation rule, each removal
shortening the word by 2. Folds therefore always produce even-length words of
length 2n + 2 - 2 * (number of concatenations).

The length-0 (integer only) variant lives in fold_integer: the raw images are
[a0; z-1, 1] for sign +1 and [a0 - 1; 1, z-1] for sign -1, with values
a0 + 1/z and a0 - 1/z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cf import CF, cf_value, convergents, format_cf, strip_zeros
from .errors import EmptyWordError, InvalidZError, MalformedWordError

__all__ = [
    "FoldStep",
    "word_reverse",
    "word_tilde",
    "fold",
    "fold_integer",
    "folding_lemma_check",
]


@dataclass(frozen=True)
class FoldStep:
    """Record of one fold: parameters, length bookkeeping, raw pre-merge word."""

    z: int
    sign: int
    length_before: int
    length_after: int
    concatenations: int
    raw_word: tuple[int, ...]


def word_reverse(word: tuple[int, ...]) -> tuple[int, ...]:
    return word[::-1]


def word_tilde(word: tuple[int, ...]) -> tuple[int, ...]:
    """(a_1, ..., a_n) -> (a_1, ..., a_{n-1}, a_n - 1, 1); same value tail."""
    if not word:
        raise EmptyWordError("tilde of an empty word")
    return word[:-1] + (word[-1] - 1, 1)


def _validate(z: int, sign: int) -> None:
    if not isinstance(z, int) or z < 1:
        raise InvalidZError(f"z must be a positive integer, got {z!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")


def fold(cf: CF, z: int, sign: int) -> tuple[CF, FoldStep]:
    """Apply one fold to a CF with nonempty, zero-free word."""
    _validate(z, sign)
    if not cf.word:
        raise EmptyWordError("fold needs at least one partial quotient")
    if any(a < 1 for a in cf.word):
        raise MalformedWordError(f"fold input must be zero-free: {format_cf(cf)}")
    atilde = word_tilde(cf.word)
    if sign == 1:
        raw = cf.word + (z - 1,) + word_reverse(atilde)
    else:
        raw = atilde + (z - 1,) + word_reverse(cf.word)
    cleaned, merges = strip_zeros(CF(cf.a0, raw))
    step = FoldStep(
        z=z,
        sign=sign,
        length_before=cf.length,
        length_after=cleaned.length,
        concatenations=merges,
        raw_word=raw,
    )
    return cleaned, step


def fold_integer(cf: CF, z: int, sign: int) -> tuple[CF, FoldStep]:
    """Fold a length-0 CF; the image has value a0 + sign/z."""
    _validate(z, sign)
    if cf.word:
        raise MalformedWordError("fold_integer expects an empty word")
    if sign == 1:
        raw_cf = CF(cf.a0, (z - 1, 1))
    else:
        raw_cf = CF(cf.a0 - 1, (1, z - 1))
    cleaned, merges = strip_zeros(raw_cf)
    step = FoldStep(
        z=z,
        sign=sign,
        length_before=0,
        length_after=cleaned.length,
        concatenations=merges,
        raw_word=raw_cf.word,
    )
    return cleaned, step


def folding_lemma_check(cf: CF, z: int, sign: int) -> bool:
    """Exact check of the fold identities on one instance.

    Verifies both the value shift sign * (-1)^n / (z * q_n^2) and that the
    reduced denominator of the image is exactly z * q_n^2.
    """
    folded, _ = fold(cf, z, sign)
    q_n = convergents(cf)[-1].q
    n = cf.length
    expected = cf_value(cf) + Fraction(sign * (-1) ** n, z * q_n * q_n)
    got = cf_value(folded)
    return got == expected and got.denominator == z * q_n * q_n
