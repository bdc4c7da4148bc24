"""Exact continued fractions for strong Engel and Luroth-type series with signs.

The library builds, folds, and certifies continued fraction expansions of
partial sums p/x_1 + sum of eps_n/x_n over integer sequences with the strong
divisibility property x_n^2 | x_{n+1}, predicts word lengths in closed form
where a formula exists, and estimates irrationality exponents from convergent
denominator growth. All arithmetic is exact.
"""

from .cf import (
    CF,
    Convergent,
    canonicalize,
    cf_from_rational,
    cf_value,
    convergents,
    determinant_ok,
    format_cf,
    parse_cf,
    strip_zeros,
)
from .dioph import (
    LandmarkRatio,
    MuPrediction,
    MuReport,
    Surd,
    lambda_root,
    lambda_surd,
    log_int,
    mu_estimate,
    mu_predicted,
    recurrence_kind,
)
from .errors import (
    CaseOutOfRangeError,
    CFParseError,
    DigitBudgetExceededError,
    DivisibilityViolationError,
    EmptyWordError,
    FoldcfError,
    InvalidZError,
    MalformedWordError,
    OracleMismatchError,
    PrecisionExhaustedError,
    SpecError,
    StrongPropertyViolationError,
    UnknownExampleError,
    ZeroDenominatorError,
)
from .expand import (
    ExpansionTrace,
    LengthCase,
    StageRecord,
    VerifyEntry,
    VerifyReport,
    classify_case,
    expand_series,
    predict_length,
    verify_expansion,
)
from .fold import FoldStep, fold, fold_integer, folding_lemma_check, word_reverse, word_tilde
from .pseudopoly import MuParams, PolyTerm, alpha_eval
from .rational import Rational, format_rational, make_rational, parse_rational
from .series import (
    DEFAULT_DIGIT_BUDGET,
    AlphaSource,
    ConstAlpha,
    IntSource,
    PseudoPolyAlpha,
    SeriesSpec,
    SeriesState,
    SignSeq,
    Variant,
    effective_prefix,
    gen_sequences,
    load_spec,
    partial_sum,
    spec_from_json,
    spec_to_json,
    strong_check,
)
from .catalog import BUILTIN_NAMES, builtin_spec

__version__ = "0.1.0"
