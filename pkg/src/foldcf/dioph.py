"""Irrationality exponent prediction and measurement.

For the recurrence families the dominant balance of the growth law gives a
closed-form exponent. With r and s the extremal exponents of the
pseudo-polynomial and kind A or B the recurrence shape:

    lambda_A = (s + 4 + sqrt((s + 4)^2 + 4(r - 1))) / 2   >= 2 + sqrt(3)
    lambda_B = (s + 2 + sqrt((s + 2)^2 + 4(r + 1))) / 2   >= 1 + sqrt(2)

and the predicted exponent is mu = max(nu, lambda). When r and s are exact
rationals the root is kept symbolically as a quadratic surd so library users
can compare predictions exactly.

The measured side works on a finite expansion: with q_j the convergent
denominators of the stage-n_max continued fraction and L_j = log q_j, the
exponent estimate is 1 + max over a window of the consecutive ratios
L_{j+1} / L_j. The window defaults to starting at the stage-3 word length,
skipping small-index noise. Each fold inserts its multiplier as a partial
quotient z - 1 right after the preserved prefix (one position later for
negative folds); the ratio at that landmark index approaches mu - 1, and the
report lists those landmark ratios separately together with the relative gap
eta between the windowed maximum and the predicted mu - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, log, sqrt

from .cf import convergents
from .errors import SpecError
from .expand import expand_series
from .pseudopoly import MuParams
from .series import (
    A_VARIANTS,
    B_VARIANTS,
    DEFAULT_DIGIT_BUDGET,
    PseudoPolyAlpha,
    SeriesSpec,
)

__all__ = [
    "Surd",
    "MuPrediction",
    "LandmarkRatio",
    "MuReport",
    "log_int",
    "lambda_root",
    "lambda_surd",
    "mu_predicted",
    "mu_estimate",
    "recurrence_kind",
]


def log_int(n: int) -> float:
    """Natural log of a positive integer of any size."""
    if n < 1:
        raise ValueError(f"log_int needs a positive integer, got {n}")
    return log(n)


def _extract_square(n: int) -> tuple[int, int]:
    """n = f^2 * d with d kept small; full squarefree split for smooth n."""
    if n == 0:
        return 0, 1
    root = isqrt(n)
    if root * root == n:
        return root, 1
    f, d = 1, n
    p = 2
    while p * p <= min(d, 1_000_000):
        while d % (p * p) == 0:
            d //= p * p
            f *= p
        p += 1 if p == 2 else 2
    return f, d


@dataclass(frozen=True)
class Surd:
    """Exact value a + b * sqrt(d), normalized so equality is structural."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("negative discriminant")
        a, b, d = Fraction(self.a), Fraction(self.b), self.d
        if b == 0 or d == 0:
            b, d = Fraction(0), 1
        else:
            f, rest = _extract_square(d)
            if rest == 1:
                a, b, d = a + b * f, Fraction(0), 1
            else:
                b, d = b * f, rest
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def rational(cls, value: Fraction) -> "Surd":
        return cls(Fraction(value), Fraction(0), 1)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * sqrt(self.d)

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


def recurrence_kind(spec: SeriesSpec) -> str | None:
    """'A' or 'B' for the recurrence families, None otherwise."""
    if spec.variant in A_VARIANTS:
        return "A"
    if spec.variant in B_VARIANTS:
        return "B"
    return None


def lambda_root(kind: str, r: float, s: float) -> float:
    if kind == "A":
        t = s + 4.0
        return (t + sqrt(t * t + 4.0 * (r - 1.0))) / 2.0
    if kind == "B":
        t = s + 2.0
        return (t + sqrt(t * t + 4.0 * (r + 1.0))) / 2.0
    raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")


def lambda_surd(kind: str, r: float, s: float) -> Surd:
    """The root as an exact surd; r and s are taken as exact binary rationals."""
    rq, sq = Fraction(r), Fraction(s)
    if kind == "A":
        t = sq + 4
        disc = t * t + 4 * (rq - 1)
    elif kind == "B":
        t = sq + 2
        disc = t * t + 4 * (rq + 1)
    else:
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    if disc < 0:
        raise ValueError("negative discriminant")
    num, den = disc.numerator, disc.denominator
    f, d = _extract_square(num * den)
    # sqrt(disc) = (f / den) * sqrt(d)
    return Surd(t / 2, Fraction(f, 2 * den), d)


@dataclass(frozen=True)
class MuPrediction:
    mu: float
    lam: float
    nu: float
    closed: Surd


def mu_predicted(kind: str, params: MuParams) -> MuPrediction:
    """mu = max(nu, lambda_kind(r_max, s_max)); ties resolve to the surd."""
    r, s = params.r_max, params.s_max
    lam = lambda_root(kind, r, s)
    lam_closed = lambda_surd(kind, r, s)
    if params.nu > lam:
        return MuPrediction(
            mu=params.nu,
            lam=lam,
            nu=params.nu,
            closed=Surd.rational(Fraction(params.nu)),
        )
    return MuPrediction(mu=lam, lam=lam, nu=params.nu, closed=lam_closed)


@dataclass(frozen=True)
class LandmarkRatio:
    stage: int
    index: int
    ratio: float


@dataclass(frozen=True)
class MuReport:
    variant: str
    n_max: int
    window_start: int
    max_ratio: float
    estimate: float
    predicted: MuPrediction | None
    eta: float | None
    log_q: tuple[float, ...]
    ratios: tuple[tuple[int, float], ...]
    landmarks: tuple[LandmarkRatio, ...]
    log_u: tuple[float | None, ...]


def mu_estimate(
    spec: SeriesSpec,
    n_max: int,
    window_start: int | None = None,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
) -> MuReport:
    """Windowed growth-ratio estimate of the irrationality exponent."""
    final_cf, trace = expand_series(spec, n_max, digit_budget)
    qs = [c.q for c in convergents(final_cf) if c.index >= 0]
    top = len(qs) - 1  # == final word length
    ls = [log_int(q) for q in qs]
    if window_start is None:
        anchor = min(3, n_max)
        window_start = trace.stages[anchor - 1].cf.length
    window_start = max(1, min(window_start, top - 1))
    ratios = tuple(
        (j, ls[j + 1] / ls[j]) for j in range(1, top) if ls[j] > 0.0
    )
    windowed = [ratio for j, ratio in ratios if j >= window_start]
    if not windowed:
        raise SpecError(
            f"no usable ratios: expansion to n_max={n_max} is too short"
        )
    max_ratio = max(windowed)
    estimate = 1.0 + max_ratio

    landmarks = []
    for i, st in enumerate(trace.stages):
        if st.step is None:
            continue
        prev_len = trace.stages[i - 1].cf.length
        idx = prev_len + (1 if st.step.sign == 1 else 2)
        if 1 <= idx <= top and ls[idx - 1] > 0.0:
            landmarks.append(LandmarkRatio(st.n, idx, ls[idx] / ls[idx - 1]))

    kind = recurrence_kind(spec)
    predicted = None
    if kind is not None:
        if isinstance(spec.alpha, PseudoPolyAlpha):
            params = spec.alpha.params
        else:
            params = MuParams()  # constant alpha: r = s = 0, nu = 1
        predicted = mu_predicted(kind, params)
    eta = None
    if predicted is not None:
        eta = max_ratio / (predicted.mu - 1.0) - 1.0

    return MuReport(
        variant=spec.variant.value,
        n_max=n_max,
        window_start=window_start,
        max_ratio=max_ratio,
        estimate=estimate,
        predicted=predicted,
        eta=eta,
        log_q=tuple(ls),
        ratios=ratios,
        landmarks=tuple(landmarks),
        log_u=tuple(
            log_int(st.u) if st.u is not None else None for st in trace.states
        ),
    )
