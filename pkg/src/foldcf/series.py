"""Series specifications and integer sequence generation.

A series is a rational prefix p/x_1 plus a tail sum of eps_n / x_n for n >= 2,
where (x_n) satisfies the strong divisibility property x_n^2 | x_{n+1}. The
multiplier sequence is z_1 = x_1 and z_{n+1} = x_{n+1} / x_n^2.

Supported families build (x_n) from an auxiliary pair (u_n), (v_n):

    x_1 = u_1,  x_{n+1} = x_n * u_{n+1} * v_n

with (u_n) driven by one of two second order recurrences,

    A:  u_{n+2} * u_n = alpha_n * u_{n+1}^3 * v_{n+1},  seed u_2 = m * u_1^2 * v_1
    B:  u_{n+2}       = alpha_n * u_{n+1}^2 * v_n,      seed u_2 = m * u_1

The Luroth variants derive v_n = u_n - 1, the alternating Luroth variants
v_n = u_n + 1, and the Engel variants take (v_n) from an explicit source.
Two further families bypass the recurrences: independent_uv grows u and v by
running products (u_n = beta_n * u_1...u_{n-1}, v_n = gamma_n * v_1...v_{n-1}),
and explicit_x takes the x list as given data.

For the recurrence families the multipliers admit closed forms through
rho_1 = m, rho_{n+1} = alpha_n * rho_n:

    A:  z_{n+1} = u_n * v_n^2 * rho_n
    B:  z_{n+1} = v_n * rho_n

Generation computes z both ways and insists they agree; the direct quotient
x_{n+1} / x_n^2 is always the authority.

Every generated integer is capped by a decimal digit budget, checked before
any large multiplication is attempted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import inf, log2
from typing import Sequence, Union

from .errors import (
    DigitBudgetExceededError,
    DivisibilityViolationError,
    SpecError,
    StrongPropertyViolationError,
)
from .pseudopoly import MuParams, PolyTerm, alpha_eval
from .rational import format_rational, parse_rational

__all__ = [
    "DEFAULT_DIGIT_BUDGET",
    "Variant",
    "SignSeq",
    "ConstAlpha",
    "PseudoPolyAlpha",
    "AlphaSource",
    "IntSource",
    "SeriesSpec",
    "SeriesState",
    "gen_sequences",
    "strong_check",
    "partial_sum",
    "effective_prefix",
    "spec_to_json",
    "spec_from_json",
    "load_spec",
]

DEFAULT_DIGIT_BUDGET = 1_000_000


class Variant(str, Enum):
    ENGEL_A = "engel_a"
    ENGEL_B = "engel_b"
    LUROTH_A = "luroth_a"
    LUROTH_B = "luroth_b"
    ALT_LUROTH_A = "alt_luroth_a"
    ALT_LUROTH_B = "alt_luroth_b"
    INDEPENDENT_UV = "independent_uv"
    EXPLICIT_X = "explicit_x"


A_VARIANTS = frozenset({Variant.ENGEL_A, Variant.LUROTH_A, Variant.ALT_LUROTH_A})
B_VARIANTS = frozenset({Variant.ENGEL_B, Variant.LUROTH_B, Variant.ALT_LUROTH_B})
LUROTH_VARIANTS = frozenset(
    {Variant.LUROTH_A, Variant.LUROTH_B, Variant.ALT_LUROTH_A, Variant.ALT_LUROTH_B}
)
RECURRENCE_VARIANTS = A_VARIANTS | B_VARIANTS


@dataclass(frozen=True)
class SignSeq:
    """Signs eps_n for n >= 2; eps_1 is absorbed into the prefix.

    kind 'plus' is all +1, 'alternating' is eps_n = (-1)^(n-1), 'list' holds
    explicit signs starting at eps_2 and refuses reads past its end, 'period'
    repeats its pattern starting at eps_2.
    """

    kind: str
    values: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("plus", "alternating", "list", "period"):
            raise SpecError(f"unknown sign kind {self.kind!r}")
        if any(s not in (1, -1) for s in self.values):
            raise SpecError("signs must be +1 or -1")
        if self.kind in ("list", "period") and not self.values:
            raise SpecError(f"sign kind {self.kind!r} needs a nonempty value list")

    @classmethod
    def plus(cls) -> "SignSeq":
        return cls("plus")

    @classmethod
    def alternating(cls) -> "SignSeq":
        return cls("alternating")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "SignSeq":
        return cls("list", tuple(values))

    @classmethod
    def periodic(cls, values: Sequence[int]) -> "SignSeq":
        return cls("period", tuple(values))

    def at(self, n: int) -> int:
        if n < 2:
            raise SpecError(f"signs are defined from n=2, asked for n={n}")
        if self.kind == "plus":
            return 1
        if self.kind == "alternating":
            return 1 if n % 2 == 1 else -1
        if self.kind == "period":
            return self.values[(n - 2) % len(self.values)]
        if n - 2 >= len(self.values):
            raise SpecError(f"sign list exhausted at n={n}")
        return self.values[n - 2]


@dataclass(frozen=True)
class ConstAlpha:
    """Constant-by-parts alpha: values from n=1, last entry repeats forever."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise SpecError("alpha const list must be nonempty")
        if any(a < 1 for a in self.values):
            raise SpecError("alpha values must be positive integers")

    def at(self, n: int) -> int:
        return self.values[min(n - 1, len(self.values) - 1)]


@dataclass(frozen=True)
class PseudoPolyAlpha:
    """alpha_n = ceil(exp(C * nu^n) * P(u_n, u_{n+1})), certified exactly."""

    params: MuParams


AlphaSource = Union[ConstAlpha, PseudoPolyAlpha]


@dataclass(frozen=True)
class IntSource:
    """Positive integer sequence source for v, beta, or gamma.

    kind 'ones' is constantly 1, 'n' is the index itself, 'const' reads from
    a list whose first entry sits at index `start` and whose last entry
    repeats forever.
    """

    kind: str
    values: tuple[int, ...] = ()
    start: int = 1

    def __post_init__(self):
        if self.kind not in ("const", "n", "ones"):
            raise SpecError(f"unknown sequence source {self.kind!r}")
        if self.kind == "const":
            if not self.values:
                raise SpecError("const sequence source needs a nonempty list")
            if any(a < 1 for a in self.values):
                raise SpecError("sequence source values must be positive")

    def at(self, n: int) -> int:
        if self.kind == "ones":
            return 1
        if self.kind == "n":
            return n
        if n < self.start:
            raise SpecError(f"sequence source starts at {self.start}, asked for {n}")
        return self.values[min(n - self.start, len(self.values) - 1)]


@dataclass(frozen=True)
class SeriesSpec:
    variant: Variant
    u1: int | None = None
    m: int = 1
    alpha: AlphaSource = field(default_factory=lambda: ConstAlpha((1,)))
    v: IntSource | None = None
    v1: int | None = None
    beta: IntSource | None = None
    gamma: IntSource | None = None
    signs: SignSeq = field(default_factory=SignSeq.plus)
    prefix: Fraction | None = None
    x_list: tuple[int, ...] | None = None

    def validate(self) -> None:
        var = self.variant
        if var in RECURRENCE_VARIANTS:
            if self.u1 is None:
                raise SpecError(f"{var.value} needs u1")
            if var in (Variant.LUROTH_A, Variant.LUROTH_B):
                # v = u - 1 must stay positive
                if self.u1 < 2:
                    raise SpecError(f"{var.value} needs u1 >= 2")
            elif self.u1 < 1:
                raise SpecError("u1 must be positive")
            if self.m < 1:
                raise SpecError("m must be a positive integer")
            if var in (Variant.ENGEL_A, Variant.ENGEL_B):
                if self.v is None:
                    raise SpecError(f"{var.value} needs a v source")
            elif self.v is not None:
                raise SpecError(f"{var.value} derives v from u; drop the v source")
        elif var is Variant.INDEPENDENT_UV:
            if self.u1 is None or self.v1 is None:
                raise SpecError("independent_uv needs u1 and v1")
            if self.u1 < 1 or self.v1 < 1:
                raise SpecError("u1 and v1 must be positive")
            if self.beta is None or self.gamma is None:
                raise SpecError("independent_uv needs beta and gamma sources")
        elif var is Variant.EXPLICIT_X:
            if not self.x_list:
                raise SpecError("explicit_x needs a nonempty x_list")
            if any(x < 1 for x in self.x_list):
                raise SpecError("x values must be positive")
        else:  # pragma: no cover
            raise SpecError(f"unhandled variant {var!r}")


@dataclass(frozen=True)
class SeriesState:
    """Row n of the generated sequences; fields absent for a family are None."""

    n: int
    u: int | None
    u_next: int | None
    v: int | None
    x: int
    rho: int | None
    z: int


def _bits_to_digits(bits: int) -> int:
    return bits * 30103 // 100000 + 1


def _guard_product_bits(bits: int, budget: int, what: str) -> None:
    digits = _bits_to_digits(bits)
    if digits > budget:
        raise DigitBudgetExceededError(
            f"{what} would have about {digits} digits, over the budget of {budget}"
        )


def _guard_alpha(params: MuParams, n: int, u: int, v: int, budget: int) -> None:
    # conservative size estimate before evaluating the pseudo-polynomial
    try:
        growth = params.C * params.nu**n * 1.4426950408889634
    except OverflowError:
        growth = inf
    top = 0.0
    for t in params.terms:
        top = max(top, log2(max(float(t.c), 1.0)) + t.r * u.bit_length() + t.s * v.bit_length())
    est = growth + top + len(params.terms)
    if est == inf or _bits_to_digits(int(est)) > budget:
        raise DigitBudgetExceededError(
            f"alpha_{n} size estimate exceeds the budget of {budget} digits"
        )


def _alpha_at(source: AlphaSource, n: int, u: int, u_next: int, budget: int) -> int:
    if isinstance(source, ConstAlpha):
        return source.at(n)
    _guard_alpha(source.params, n, u, u_next, budget)
    return alpha_eval(source.params, n, u, u_next)


def strong_check(xs: Sequence[int]) -> list[int]:
    """Verify x_n^2 | x_{n+1} along the list and return the multipliers z_n."""
    if not xs:
        raise SpecError("empty x list")
    if any(x < 1 for x in xs):
        raise SpecError("x values must be positive")
    zs = [xs[0]]
    for i in range(1, len(xs)):
        z, rem = divmod(xs[i], xs[i - 1] * xs[i - 1])
        if rem:
            raise StrongPropertyViolationError(i)
        zs.append(z)
    return zs


def _v_rule(spec: SeriesSpec):
    var = spec.variant
    if var in (Variant.LUROTH_A, Variant.LUROTH_B):
        return lambda n, u_n: u_n - 1
    if var in (Variant.ALT_LUROTH_A, Variant.ALT_LUROTH_B):
        return lambda n, u_n: u_n + 1
    return lambda n, u_n: spec.v.at(n)


def _gen_recurrence(spec: SeriesSpec, count: int, budget: int) -> list[SeriesState]:
    is_a = spec.variant in A_VARIANTS
    v_of = _v_rule(spec)
    u1 = spec.u1
    v1 = v_of(1, u1)
    if v1 < 1:
        raise SpecError("v_1 must be positive")
    us: list[int | None] = [u1, spec.m * u1 * u1 * v1 if is_a else spec.m * u1]
    vs = [v1]  # vs[i] = v_{i+1}, same 0-based shift for us, rhos, alphas
    rhos = [spec.m]
    alphas: list[int] = []

    def ensure_v(upto: int) -> None:
        while len(vs) < upto:
            j = len(vs) + 1
            v_j = v_of(j, us[j - 1])
            if v_j < 1:
                raise SpecError(f"v_{j} must be positive")
            vs.append(v_j)

    def ensure_alpha(upto: int) -> None:
        # alpha_k is evaluated at (u_k, u_{k+1}); rho rides along
        while len(alphas) < upto:
            k = len(alphas) + 1
            a_k = _alpha_at(spec.alpha, k, us[k - 1], us[k], budget)
            alphas.append(a_k)
            rhos.append(a_k * rhos[-1])

    def u_step(j: int) -> None:
        # u_j from the recurrence at index j - 2
        ensure_v(j - 1)
        ensure_alpha(j - 2)
        a = alphas[j - 3]
        if is_a:
            bits = a.bit_length() + 3 * us[j - 2].bit_length() + vs[j - 2].bit_length()
            _guard_product_bits(bits, budget, f"u_{j}")
            num = a * us[j - 2] ** 3 * vs[j - 2]
            u_j, rem = divmod(num, us[j - 3])
            if rem:
                raise DivisibilityViolationError(
                    f"alpha_{j - 2} * u_{j - 1}^3 * v_{j - 1} is not divisible by u_{j - 2}"
                )
        else:
            bits = a.bit_length() + 2 * us[j - 2].bit_length() + vs[j - 3].bit_length()
            _guard_product_bits(bits, budget, f"u_{j}")
            u_j = a * us[j - 2] ** 2 * vs[j - 3]
        us.append(u_j)

    for j in range(3, count + 1):
        u_step(j)
    ensure_v(count)
    if count >= 2:
        ensure_alpha(count - 1)  # rho_count for the last state
        try:
            u_step(count + 1)
        except DigitBudgetExceededError:
            us.append(None)

    xs = [u1]
    zs = [u1]  # z_1 = x_1
    for n in range(2, count + 1):
        bits = (
            xs[n - 2].bit_length() + us[n - 1].bit_length() + vs[n - 2].bit_length()
        )
        _guard_product_bits(bits, budget, f"x_{n}")
        x_n = xs[n - 2] * us[n - 1] * vs[n - 2]
        z_n, rem = divmod(x_n, xs[n - 2] * xs[n - 2])
        if rem:
            raise StrongPropertyViolationError(n - 1)
        z_closed = (
            us[n - 2] * vs[n - 2] ** 2 * rhos[n - 2]
            if is_a
            else vs[n - 2] * rhos[n - 2]
        )
        if z_n != z_closed:
            raise AssertionError(
                f"multiplier mismatch at n={n}: direct {z_n}, closed {z_closed}"
            )
        xs.append(x_n)
        zs.append(z_n)

    return [
        SeriesState(
            n=n,
            u=us[n - 1],
            u_next=us[n] if len(us) > n else None,
            v=vs[n - 1],
            x=xs[n - 1],
            rho=rhos[n - 1],
            z=zs[n - 1],
        )
        for n in range(1, count + 1)
    ]


def _gen_independent(spec: SeriesSpec, count: int, budget: int) -> list[SeriesState]:
    us = [spec.u1]
    vs = [spec.v1]
    pu, pv = spec.u1, spec.v1
    for n in range(2, count + 1):
        b, g = spec.beta.at(n), spec.gamma.at(n)
        _guard_product_bits(b.bit_length() + pu.bit_length(), budget, f"u_{n}")
        _guard_product_bits(g.bit_length() + pv.bit_length(), budget, f"v_{n}")
        us.append(b * pu)
        vs.append(g * pv)
        pu *= us[-1]
        pv *= vs[-1]

    xs = [spec.u1]
    zs = [spec.u1]
    for n in range(2, count + 1):
        bits = xs[n - 2].bit_length() + us[n - 1].bit_length() + vs[n - 2].bit_length()
        _guard_product_bits(bits, budget, f"x_{n}")
        x_n = xs[n - 2] * us[n - 1] * vs[n - 2]
        z_n, rem = divmod(x_n, xs[n - 2] * xs[n - 2])
        if rem:
            raise StrongPropertyViolationError(n - 1)
        z_closed = spec.beta.at(2) * vs[0] if n == 2 else spec.beta.at(n) * spec.gamma.at(n - 1)
        if z_n != z_closed:
            raise AssertionError(
                f"multiplier mismatch at n={n}: direct {z_n}, closed {z_closed}"
            )
        xs.append(x_n)
        zs.append(z_n)

    u_next_last = None
    try:
        b = spec.beta.at(count + 1)
        _guard_product_bits(b.bit_length() + pu.bit_length(), budget, "u_next")
        u_next_last = b * pu
    except (SpecError, DigitBudgetExceededError):
        pass

    return [
        SeriesState(
            n=n,
            u=us[n - 1],
            u_next=us[n] if n < count else u_next_last,
            v=vs[n - 1],
            x=xs[n - 1],
            rho=None,
            z=zs[n - 1],
        )
        for n in range(1, count + 1)
    ]


def _gen_explicit(spec: SeriesSpec, count: int) -> list[SeriesState]:
    if len(spec.x_list) < count:
        raise SpecError(
            f"x_list has {len(spec.x_list)} entries, cannot generate to n={count}"
        )
    xs = list(spec.x_list[:count])
    zs = strong_check(xs)
    return [
        SeriesState(n=n, u=None, u_next=None, v=None, x=xs[n - 1], rho=None, z=zs[n - 1])
        for n in range(1, count + 1)
    ]


def gen_sequences(
    spec: SeriesSpec, count: int, digit_budget: int = DEFAULT_DIGIT_BUDGET
) -> list[SeriesState]:
    """States for n = 1..count; every integer stays under the digit budget."""
    if count < 1:
        raise SpecError(f"need count >= 1, got {count}")
    spec.validate()
    if spec.variant is Variant.EXPLICIT_X:
        return _gen_explicit(spec, count)
    if spec.variant is Variant.INDEPENDENT_UV:
        return _gen_independent(spec, count, digit_budget)
    return _gen_recurrence(spec, count, digit_budget)


def effective_prefix(spec: SeriesSpec, x1: int) -> Fraction:
    return spec.prefix if spec.prefix is not None else Fraction(1, x1)


def partial_sum(
    spec: SeriesSpec, n: int, digit_budget: int = DEFAULT_DIGIT_BUDGET
) -> Fraction:
    """Exact value of the series truncated at x_n."""
    states = gen_sequences(spec, n, digit_budget)
    total = effective_prefix(spec, states[0].x)
    for j in range(2, n + 1):
        total += Fraction(spec.signs.at(j), states[j - 1].x)
    return total


# JSON wire format. Integers of the sequences travel as decimal strings so
# arbitrary sizes survive any JSON reader; pseudo-polynomial parameters are
# reals and stay JSON numbers.


def _int_from(obj, key: str, required: bool = False) -> int | None:
    if key not in obj or obj[key] is None:
        if required:
            raise SpecError(f"spec is missing {key!r}")
        return None
    val = obj[key]
    if isinstance(val, bool):
        raise SpecError(f"{key!r} must be an integer, got a boolean")
    if isinstance(val, int):
        return val
    if isinstance(val, str):
        try:
            return int(val, 10)
        except ValueError as e:
            raise SpecError(f"{key!r} is not a decimal integer: {val!r}") from e
    raise SpecError(f"{key!r} must be an integer or decimal string")


def _int_list_from(raw, what: str) -> tuple[int, ...]:
    if not isinstance(raw, list):
        raise SpecError(f"{what} must be a list")
    out = []
    for item in raw:
        if isinstance(item, bool) or not isinstance(item, (int, str)):
            raise SpecError(f"{what} entries must be integers or decimal strings")
        try:
            out.append(int(item))
        except ValueError as e:
            raise SpecError(f"{what} entry {item!r} is not a decimal integer") from e
    return tuple(out)


def _alpha_from_json(raw) -> AlphaSource:
    if raw is None:
        return ConstAlpha((1,))
    if not isinstance(raw, dict) or len(raw) != 1:
        raise SpecError('alpha must be {"const": [...]} or {"pseudo": {...}}')
    if "const" in raw:
        return ConstAlpha(_int_list_from(raw["const"], "alpha const list"))
    if "pseudo" in raw:
        p = raw["pseudo"]
        if not isinstance(p, dict):
            raise SpecError("alpha pseudo must be an object")
        try:
            terms = tuple(
                PolyTerm(float(t["c"]), float(t["r"]), float(t["s"]))
                for t in p["terms"]
            )
            params = MuParams(float(p.get("C", 0.0)), float(p.get("nu", 1.0)), terms)
        except (KeyError, TypeError, ValueError) as e:
            raise SpecError(f"bad pseudo-polynomial alpha: {e}") from e
        return PseudoPolyAlpha(params)
    raise SpecError('alpha must be {"const": [...]} or {"pseudo": {...}}')


def _source_from_json(raw, what: str, start: int) -> IntSource | None:
    if raw is None:
        return None
    if not isinstance(raw, dict) or len(raw) != 1:
        raise SpecError(f'{what} must be {{"const": [...]}} or {{"name": "..."}}')
    if "const" in raw:
        return IntSource("const", _int_list_from(raw["const"], f"{what} const list"), start)
    if "name" in raw:
        name = raw["name"]
        if name not in ("n", "ones"):
            raise SpecError(f"unknown {what} source name {name!r}")
        return IntSource(name, (), start)
    raise SpecError(f'{what} must be {{"const": [...]}} or {{"name": "..."}}')


def _signs_from_json(raw) -> SignSeq:
    if raw is None:
        return SignSeq.plus()
    if raw == "plus":
        return SignSeq.plus()
    if raw == "alternating":
        return SignSeq.alternating()
    if isinstance(raw, dict) and len(raw) == 1:
        if "list" in raw:
            return SignSeq.from_list(_int_list_from(raw["list"], "sign list"))
        if "period" in raw:
            return SignSeq.periodic(_int_list_from(raw["period"], "sign period"))
    raise SpecError(f"unintelligible signs: {raw!r}")


def spec_from_json(obj: dict) -> SeriesSpec:
    if not isinstance(obj, dict):
        raise SpecError("spec must be a JSON object")
    try:
        variant = Variant(obj.get("variant"))
    except ValueError as e:
        raise SpecError(f"unknown variant {obj.get('variant')!r}") from e
    prefix_raw = obj.get("prefix")
    prefix = None
    if prefix_raw is not None:
        if not isinstance(prefix_raw, str):
            raise SpecError('prefix must be a "p/q" string')
        prefix = parse_rational(prefix_raw)
    x_raw = obj.get("x_list")
    spec = SeriesSpec(
        variant=variant,
        u1=_int_from(obj, "u1"),
        m=_int_from(obj, "m") or 1,
        alpha=_alpha_from_json(obj.get("alpha")),
        v=_source_from_json(obj.get("v"), "v", start=1),
        v1=_int_from(obj, "v1"),
        beta=_source_from_json(obj.get("beta"), "beta", start=2),
        gamma=_source_from_json(obj.get("gamma"), "gamma", start=2),
        signs=_signs_from_json(obj.get("signs")),
        prefix=prefix,
        x_list=_int_list_from(x_raw, "x_list") if x_raw is not None else None,
    )
    spec.validate()
    return spec


def _alpha_to_json(alpha: AlphaSource):
    if isinstance(alpha, ConstAlpha):
        return {"const": [str(a) for a in alpha.values]}
    p = alpha.params
    return {
        "pseudo": {
            "C": p.C,
            "nu": p.nu,
            "terms": [{"c": t.c, "r": t.r, "s": t.s} for t in p.terms],
        }
    }


def _source_to_json(src: IntSource | None):
    if src is None:
        return None
    if src.kind == "const":
        return {"const": [str(a) for a in src.values]}
    return {"name": src.kind}


def _signs_to_json(signs: SignSeq):
    if signs.kind in ("plus", "alternating"):
        return signs.kind
    return {signs.kind: list(signs.values)}


def spec_to_json(spec: SeriesSpec) -> dict:
    out: dict = {"variant": spec.variant.value}
    if spec.variant in RECURRENCE_VARIANTS:
        out["u1"] = str(spec.u1)
        out["m"] = str(spec.m)
        out["alpha"] = _alpha_to_json(spec.alpha)
        if spec.variant in (Variant.ENGEL_A, Variant.ENGEL_B):
            out["v"] = _source_to_json(spec.v)
    elif spec.variant is Variant.INDEPENDENT_UV:
        out["u1"] = str(spec.u1)
        out["v1"] = str(spec.v1)
        out["beta"] = _source_to_json(spec.beta)
        out["gamma"] = _source_to_json(spec.gamma)
    else:
        out["x_list"] = [str(x) for x in spec.x_list]
    out["signs"] = _signs_to_json(spec.signs)
    if spec.prefix is not None:
        out["prefix"] = format_rational(spec.prefix)
    return out


def load_spec(text: str) -> SeriesSpec:
    """Parse a spec from JSON text."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"spec file is not valid JSON: {e}") from e
    return spec_from_json(obj)
