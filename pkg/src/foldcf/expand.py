"""Expansion engine: drive a series spec through repeated folds.

Stage 1 is the continued fraction of the prefix p/x_1, a word of length k.
Stage n+1 folds stage n with multiplier z_{n+1}, choosing the operator sign
eps_{n+1} * (-1)^(current word length) so that the fold shifts the value by
exactly eps_{n+1} / x_{n+1}. After every fold the CF is re-evaluated and
compared against the exact running partial sum; a mismatch raises
OracleMismatch and means a bug, not bad input.

Length prediction distinguishes four cases. Generic (word length k >= 1,
all multipliers z_j >= 2, first quotient above 2 when k = 1 or above 1 when
k >= 2) gives lengths (k+2) * 2^(n-1) - 2 with no concatenations ever. Two
special cases cover fractional part exactly 1/2: with all plus signs each
fold from stage 4 on merges once and lengths are 5 * 2^(n-2) from n = 3;
with strictly alternating signs the merges start one stage earlier and
lengths are 5 * 2^(n-2) - 2 from n = 3. Everything else is NonApplicable:
expansion still works and is still checked exactly, only the closed-form
length is unavailable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .cf import CF, canonicalize, cf_from_rational, cf_value, determinant_ok
from .errors import (
    CaseOutOfRangeError,
    DigitBudgetExceededError,
    OracleMismatchError,
    SpecError,
)
from .fold import FoldStep, fold, fold_integer
from .series import (
    DEFAULT_DIGIT_BUDGET,
    SeriesSpec,
    SeriesState,
    SignSeq,
    Variant,
    effective_prefix,
    gen_sequences,
)

__all__ = [
    "LengthCase",
    "StageRecord",
    "ExpansionTrace",
    "VerifyEntry",
    "VerifyReport",
    "classify_case",
    "predict_length",
    "expand_series",
    "verify_expansion",
]

SIGN_HORIZON = 64


class LengthCase(str, Enum):
    GENERIC = "generic"
    SPECIAL_ENGEL_X1_EQ_2 = "special_engel_x1_eq_2"
    SPECIAL_PIERCE_X1_EQ_2 = "special_pierce_x1_eq_2"
    NON_APPLICABLE = "non_applicable"


def predict_length(k: int, n: int, case: LengthCase) -> int:
    """Closed-form word length of stage n, or CaseOutOfRange."""
    if case is LengthCase.GENERIC:
        if n < 1:
            raise CaseOutOfRangeError(f"no stage {n}")
        return (k + 2) * 2 ** (n - 1) - 2
    if case is LengthCase.SPECIAL_ENGEL_X1_EQ_2:
        if n < 3:
            raise CaseOutOfRangeError(f"special-case formula starts at n=3, got {n}")
        return 5 * 2 ** (n - 2)
    if case is LengthCase.SPECIAL_PIERCE_X1_EQ_2:
        if n < 3:
            raise CaseOutOfRangeError(f"special-case formula starts at n=3, got {n}")
        return 5 * 2 ** (n - 2) - 2
    raise CaseOutOfRangeError("no length formula for this spec")


def _stage_prediction(k: int, n: int, case: LengthCase) -> int | None:
    """Prediction for a stage record; special cases fall back to the generic
    formula for n <= 2, where no merge has happened yet."""
    if case is LengthCase.NON_APPLICABLE:
        return None
    if case is not LengthCase.GENERIC and n < 3:
        return predict_length(k, n, LengthCase.GENERIC)
    return predict_length(k, n, case)


def _sign_pattern(signs: SignSeq, horizon: int = SIGN_HORIZON) -> str | None:
    """'plus' or 'alternating' when certain to the horizon, else None."""
    try:
        vals = [signs.at(n) for n in range(2, horizon + 1)]
    except SpecError:
        return None
    if all(s == 1 for s in vals):
        return "plus"
    if all(s == (1 if n % 2 == 1 else -1) for n, s in enumerate(vals, start=2)):
        return "alternating"
    return None


def _classify(spec: SeriesSpec, states: list[SeriesState], prefix_cf: CF) -> LengthCase:
    k = prefix_cf.length
    if k == 0:
        return LengthCase.NON_APPLICABLE
    if any(st.z <= 1 for st in states[1:]):
        return LengthCase.NON_APPLICABLE
    a1 = prefix_cf.word[0]
    if k >= 2:
        return LengthCase.GENERIC if a1 > 1 else LengthCase.NON_APPLICABLE
    if a1 > 2:
        return LengthCase.GENERIC
    if prefix_cf.word == (2,):
        pattern = _sign_pattern(spec.signs)
        if pattern == "plus":
            return LengthCase.SPECIAL_ENGEL_X1_EQ_2
        if pattern == "alternating":
            return LengthCase.SPECIAL_PIERCE_X1_EQ_2
    return LengthCase.NON_APPLICABLE


def classify_case(
    spec: SeriesSpec, depth: int = 8, digit_budget: int = DEFAULT_DIGIT_BUDGET
) -> LengthCase:
    """Classify by sampling multipliers to `depth` (clipped to what the spec
    can produce) and sign patterns to a fixed horizon."""
    spec.validate()
    if spec.variant is Variant.EXPLICIT_X:
        depth = min(depth, len(spec.x_list))
    depth = max(depth, 1)
    while True:
        try:
            states = gen_sequences(spec, depth, digit_budget)
            break
        except DigitBudgetExceededError:
            if depth <= 2:
                raise
            depth = depth // 2
    prefix = effective_prefix(spec, states[0].x)
    return _classify(spec, states, cf_from_rational(prefix))


@dataclass(frozen=True)
class StageRecord:
    n: int
    cf: CF
    step: FoldStep | None
    predicted_length: int | None
    value: Fraction
    value_ok: bool


@dataclass(frozen=True)
class ExpansionTrace:
    case: LengthCase
    k: int
    states: tuple[SeriesState, ...]
    stages: tuple[StageRecord, ...]


def expand_series(
    spec: SeriesSpec, count: int, digit_budget: int = DEFAULT_DIGIT_BUDGET
) -> tuple[CF, ExpansionTrace]:
    """Continued fraction of the partial sum through x_count, with full trace."""
    states = gen_sequences(spec, count, digit_budget)
    prefix = effective_prefix(spec, states[0].x)
    if prefix.denominator != states[0].x:
        raise SpecError(
            f"prefix denominator {prefix.denominator} must equal x_1 = {states[0].x}"
        )
    prefix_cf = cf_from_rational(prefix)
    case = _classify(spec, states, prefix_cf)
    k = prefix_cf.length

    cf = prefix_cf
    running = prefix
    stages = [StageRecord(1, cf, None, _stage_prediction(k, 1, case), running, True)]
    for j in range(2, count + 1):
        eps = spec.signs.at(j)
        z = states[j - 1].z
        sign = eps * (1 if cf.length % 2 == 0 else -1)
        if cf.word:
            cf, step = fold(cf, z, sign)
        else:
            cf, step = fold_integer(cf, z, sign)
        running += Fraction(eps, states[j - 1].x)
        got = cf_value(cf)
        if got != running:
            raise OracleMismatchError(
                f"stage {j}: folded CF evaluates to {got}, series sum is {running}"
            )
        stages.append(
            StageRecord(j, cf, step, _stage_prediction(k, j, case), running, True)
        )
    return cf, ExpansionTrace(case, k, tuple(states), tuple(stages))


@dataclass(frozen=True)
class VerifyEntry:
    n: int
    value_ok: bool
    word_ok: bool
    det_ok: bool
    length_predicted: int | None
    length_actual: int
    length_ok: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.value_ok
            and self.word_ok
            and self.det_ok
            and self.length_ok is not False
        )


@dataclass(frozen=True)
class VerifyReport:
    case: LengthCase
    k: int
    entries: tuple[VerifyEntry, ...]
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(e.ok for e in self.entries)


def verify_expansion(
    spec: SeriesSpec, n_max: int, digit_budget: int = DEFAULT_DIGIT_BUDGET
) -> VerifyReport:
    """Check every stage up to n_max three ways: exact value, canonical word
    against the Euclid expansion of the partial sum, determinant identity.
    Failures are reported, not raised; generation errors still propagate."""
    try:
        _, trace = expand_series(spec, n_max, digit_budget)
    except OracleMismatchError as e:
        return VerifyReport(LengthCase.NON_APPLICABLE, 0, (), error=str(e))
    entries = []
    for st in trace.stages:
        value_ok = cf_value(st.cf) == st.value
        word_ok = canonicalize(st.cf) == cf_from_rational(st.value)
        det_ok = determinant_ok(st.cf)
        length_ok = (
            None
            if st.predicted_length is None
            else st.predicted_length == st.cf.length
        )
        entries.append(
            VerifyEntry(
                n=st.n,
                value_ok=value_ok,
                word_ok=word_ok,
                det_ok=det_ok,
                length_predicted=st.predicted_length,
                length_actual=st.cf.length,
                length_ok=length_ok,
            )
        )
    return VerifyReport(trace.case, trace.k, tuple(entries))
