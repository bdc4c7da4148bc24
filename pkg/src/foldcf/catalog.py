"""Builtin example specs.

lur1        Luroth-type A recurrence, u1 = 3, m = 1, constant alpha = 1,
            all plus signs. Multipliers 3, 12, 5202, 36091859899032, ...
altlur2     alternating Luroth B recurrence, u1 = 2, m = 1, constant
            alpha = 1, alternating signs. Multipliers 2, 3, 3, 13, 433, ...
zjisj       independent u/v growth with beta_n = n, gamma_n = 1 from
            u1 = v1 = 1, alternating signs; the multipliers are z_j = j.
kempner:<u> explicit doubly exponential x_n = u^(2^(n-1)) for n = 1..16,
            all plus signs; every multiplier past the first is 1, so each
            fold concatenates.
"""

from __future__ import annotations

from .errors import UnknownExampleError
from .series import IntSource, SeriesSpec, SignSeq, Variant

__all__ = ["BUILTIN_NAMES", "builtin_spec", "KEMPNER_DEPTH"]

BUILTIN_NAMES = ("lur1", "altlur2", "zjisj", "kempner:<u>")

KEMPNER_DEPTH = 16


def builtin_spec(name: str) -> SeriesSpec:
    if name == "lur1":
        return SeriesSpec(variant=Variant.LUROTH_A, u1=3, m=1)
    if name == "altlur2":
        return SeriesSpec(
            variant=Variant.ALT_LUROTH_B, u1=2, m=1, signs=SignSeq.alternating()
        )
    if name == "zjisj":
        return SeriesSpec(
            variant=Variant.INDEPENDENT_UV,
            u1=1,
            v1=1,
            beta=IntSource("n", start=2),
            gamma=IntSource("ones", start=2),
            signs=SignSeq.alternating(),
        )
    if name.startswith("kempner:"):
        arg = name.split(":", 1)[1]
        try:
            u = int(arg, 10)
        except ValueError:
            raise UnknownExampleError(f"kempner parameter must be an integer: {arg!r}")
        if u < 2:
            raise UnknownExampleError(f"kempner parameter must be >= 2, got {u}")
        xs = tuple(u ** (2**i) for i in range(KEMPNER_DEPTH))
        return SeriesSpec(variant=Variant.EXPLICIT_X, x_list=xs)
    raise UnknownExampleError(f"no builtin example named {name!r}")
