"""Acceptance gate: nine numbered criteria, one printed verdict line each.

Criteria 2 through 5 register every continued fraction they build so the
determinant sweep in criterion 6 can revisit all of them. Run the file as a
whole; the sweep is empty (and fails) if the builders are deselected.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from foldcf import (
    CF,
    LengthCase,
    SeriesSpec,
    SignSeq,
    Variant,
    builtin_spec,
    canonicalize,
    cf_from_rational,
    classify_case,
    determinant_ok,
    expand_series,
    fold,
    folding_lemma_check,
    gen_sequences,
    mu_estimate,
    partial_sum,
    verify_expansion,
)
from foldcf.dioph import Surd, mu_predicted
from foldcf.pseudopoly import MuParams, PolyTerm, alpha_eval
from foldcf.series import ConstAlpha, IntSource

BUILT_CFS: list[CF] = []


@pytest.fixture
def announce(capsys):
    def _p(line):
        with capsys.disabled():
            print(line)

    return _p


def _run(announce, num, name, fn, bound=None):
    t0 = time.perf_counter()
    try:
        fn()
        dt = time.perf_counter() - t0
        if bound is not None and dt >= bound:
            raise AssertionError(f"runtime {dt:.2f}s exceeds the {bound}s bound")
    except BaseException:
        announce(f"FAIL criterion {num}: {name}")
        raise
    announce(f"PASS criterion {num}: {name} ({dt:.2f}s)")


# ---------------------------------------------------------------- criterion 1

LUR1_U = [3, 18, 33048, 66266659938624768]
LUR1_X = [3, 108, 60676128, 132875521042766180738219532288]
LUR1_Z = [3, 12, 5202, 36091859899032]

ALTLUR2_U = [2, 2, 12, 432, 2426112]
ALTLUR2_X = [2, 12, 432, 2426112, 2548646416023552]

ZJISJ_U = [1, 2, 6, 48, 2880, 9953280]
ZJISJ_X = [1, 2, 12, 576, 1658880, 16511297126400]


def test_criterion_1_golden_sequences(announce):
    def check():
        states = gen_sequences(builtin_spec("lur1"), 4)
        assert [s.u for s in states] == LUR1_U
        assert [s.x for s in states] == LUR1_X
        assert [s.z for s in states] == LUR1_Z

        states = gen_sequences(builtin_spec("altlur2"), 5)
        assert [s.u for s in states] == ALTLUR2_U
        assert [s.x for s in states] == ALTLUR2_X
        assert [s.z for s in states][1:] == [u + 1 for u in ALTLUR2_U[:-1]]

        states = gen_sequences(builtin_spec("zjisj"), 6)
        assert [s.u for s in states] == ZJISJ_U
        assert [s.x for s in states] == ZJISJ_X
        assert [s.z for s in states] == [1, 2, 3, 4, 5, 6]

    _run(announce, 1, "golden sequences", check, bound=1.0)


# ---------------------------------------------------------------- criterion 2

LUR1_STAGES = [
    (0, (3,)),
    (0, (2, 1, 11, 3)),
    (0, (2, 1, 11, 3, 5201, 1, 2, 11, 1, 2)),
    (0, (2, 1, 11, 3, 5201, 1, 2, 11, 1, 2, 36091859899031,
         1, 1, 1, 11, 2, 1, 5201, 3, 11, 1, 2)),
]

ALTLUR2_STAGES = [
    (0, (2,)),
    (0, (2, 2, 1, 1)),
    (0, (2, 2, 1, 1, 2, 2, 2, 2)),
    (0, (2, 2, 1, 1, 2, 2, 2, 1, 1, 12, 2, 2, 2, 2, 1, 1, 2, 2)),
]

ALTLUR2_PREFIX_31 = (2, 2, 1, 1, 2, 2, 2, 1, 1, 12, 2, 2, 2, 2, 1, 1, 2, 2,
                     432, 1, 1, 2, 1, 1, 2, 2, 2, 2, 12, 1, 1)

ZJISJ_STAGES = [
    (1, ()),
    (0, (1, 1)),
    (0, (1, 1, 2, 2)),
    (0, (1, 1, 2, 1, 1, 3, 2, 2, 1, 1)),
    (0, (1, 1, 2, 1, 1, 3, 2, 2, 1, 1, 4, 2, 2, 2, 3, 1, 1, 2, 1, 1)),
]

ZJISJ_PREFIX_34 = (1, 1, 2, 1, 1, 3, 2, 2, 1, 1, 4, 2, 2, 2, 3, 1, 1, 2, 2,
                   5, 1, 1, 2, 1, 1, 3, 2, 2, 2, 4, 1, 1, 2, 2)


def test_criterion_2_golden_expansions(announce):
    def check():
        _, trace = expand_series(builtin_spec("lur1"), 4)
        for st, (a0, word) in zip(trace.stages, LUR1_STAGES):
            assert st.cf == CF(a0, word)
            BUILT_CFS.append(st.cf)

        _, trace = expand_series(builtin_spec("altlur2"), 5)
        for st, (a0, word) in zip(trace.stages, ALTLUR2_STAGES):
            assert st.cf == CF(a0, word)
        final = trace.stages[-1].cf
        assert final.a0 == 0
        assert final.word[:31] == ALTLUR2_PREFIX_31
        BUILT_CFS.extend(st.cf for st in trace.stages)

        _, trace = expand_series(builtin_spec("zjisj"), 6)
        for st, (a0, word) in zip(trace.stages, ZJISJ_STAGES):
            assert st.cf == CF(a0, word)
        final = trace.stages[-1].cf
        assert final.a0 == 0
        assert final.word[:34] == ZJISJ_PREFIX_34
        BUILT_CFS.extend(st.cf for st in trace.stages)

    _run(announce, 2, "golden expansions", check, bound=1.0)


# ---------------------------------------------------------------- criterion 3


def test_criterion_3_folding_lemma_randomized(announce):
    def check():
        rng = random.Random(20260822)
        for _ in range(1000):
            a0 = rng.randint(-5, 5)
            word = tuple(
                rng.randint(1, 50) for _ in range(rng.randint(1, 12))
            )
            z = rng.randint(1, 50)
            sign = rng.choice([1, -1])
            cf = CF(a0, word)
            assert folding_lemma_check(cf, z, sign)
            folded, _ = fold(cf, z, sign)
            BUILT_CFS.append(folded)

    _run(announce, 3, "folding lemma, 1000 randomized cases", check, bound=5.0)


# ---------------------------------------------------------------- criterion 4


def _random_spec(rng):
    variant = rng.choice(list(Variant))
    signs = rng.choice(
        [
            SignSeq.plus(),
            SignSeq.alternating(),
            SignSeq.from_list([rng.choice([1, -1]) for _ in range(8)]),
            SignSeq.periodic(
                [rng.choice([1, -1]) for _ in range(rng.randint(1, 3))]
            ),
        ]
    )
    alpha = ConstAlpha(
        tuple(rng.randint(1, 10) for _ in range(rng.randint(1, 3)))
    )
    if variant in (Variant.LUROTH_A, Variant.LUROTH_B):
        return SeriesSpec(
            variant=variant, u1=rng.randint(2, 5), m=rng.randint(1, 3),
            alpha=alpha, signs=signs,
        )
    if variant in (Variant.ALT_LUROTH_A, Variant.ALT_LUROTH_B):
        return SeriesSpec(
            variant=variant, u1=rng.randint(1, 5), m=rng.randint(1, 3),
            alpha=alpha, signs=signs,
        )
    if variant in (Variant.ENGEL_A, Variant.ENGEL_B):
        v = rng.choice(
            [
                IntSource("ones"),
                IntSource("n"),
                IntSource(
                    "const", tuple(rng.randint(1, 6) for _ in range(3))
                ),
            ]
        )
        return SeriesSpec(
            variant=variant, u1=rng.randint(1, 5), m=rng.randint(1, 3),
            alpha=alpha, v=v, signs=signs,
        )
    if variant is Variant.INDEPENDENT_UV:
        def src():
            return rng.choice(
                [
                    IntSource("n", start=2),
                    IntSource("ones", start=2),
                    IntSource(
                        "const",
                        tuple(rng.randint(1, 6) for _ in range(3)),
                        start=2,
                    ),
                ]
            )

        return SeriesSpec(
            variant=variant, u1=rng.randint(1, 3), v1=rng.randint(1, 3),
            beta=src(), gamma=src(), signs=signs,
        )
    xs = [rng.randint(1, 9)]
    for _ in range(6):
        xs.append(xs[-1] * xs[-1] * rng.randint(1, 9))
    spec = SeriesSpec(variant=variant, x_list=tuple(xs), signs=signs)
    if rng.random() < 0.25:
        x1 = xs[0]
        p = rng.choice([q for q in range(-3, 8) if q and math.gcd(q, x1) == 1])
        spec = SeriesSpec(
            variant=variant, x_list=tuple(xs), signs=signs,
            prefix=Fraction(p, x1),
        )
    return spec


def test_criterion_4_oracle_equivalence(announce):
    def check():
        rng = random.Random(17760704)
        specs = [(_random_spec(rng), rng.randint(2, 6)) for _ in range(197)]
        specs += [(builtin_spec(f"kempner:{u}"), 6) for u in (2, 3, 5)]
        assert len(specs) == 200
        for spec, n in specs:
            report = verify_expansion(spec, n)
            assert report.ok, (spec, n)
            cf, trace = expand_series(spec, n)
            assert canonicalize(cf) == cf_from_rational(partial_sum(spec, n))
            BUILT_CFS.extend(st.cf for st in trace.stages)

    _run(announce, 4, "oracle equivalence, 200 random specs", check, bound=60.0)


# ---------------------------------------------------------------- criterion 5


def _generic_recurrence_spec(rng):
    variant = rng.choice(
        [Variant.LUROTH_A, Variant.LUROTH_B, Variant.ALT_LUROTH_A,
         Variant.ALT_LUROTH_B, Variant.ENGEL_B]
    )
    signs = rng.choice([SignSeq.plus(), SignSeq.alternating()])
    alpha = ConstAlpha((rng.randint(1, 4),))
    if variant is Variant.ENGEL_B:
        return SeriesSpec(
            variant=variant, u1=rng.randint(3, 6), m=rng.randint(1, 3),
            alpha=alpha, v=IntSource("const", (rng.randint(2, 4),)),
            signs=signs,
        )
    return SeriesSpec(
        variant=variant, u1=rng.randint(3, 6), m=rng.randint(1, 3),
        alpha=alpha, signs=signs,
    )


def _generic_explicit_spec(rng, deep_prefix=False):
    x1 = rng.choice([5, 7, 9])
    xs = [x1]
    for _ in range(5):
        xs.append(xs[-1] * xs[-1] * rng.randint(2, 9))
    signs = rng.choice(
        [SignSeq.plus(), SignSeq.alternating(),
         SignSeq.periodic([1, -1, -1])]
    )
    prefix = None
    if deep_prefix:
        # keep drawing until the prefix word is at least 2 long and opens
        # with an entry >= 2; Euclid guarantees the last entry >= 2
        while True:
            p = rng.randint(2, x1 * 3)
            if math.gcd(p, x1) != 1:
                continue
            word = cf_from_rational(Fraction(p, x1)).word
            if len(word) >= 2 and word[0] >= 2:
                prefix = Fraction(p, x1)
                break
    return SeriesSpec(
        variant=Variant.EXPLICIT_X, x_list=tuple(xs), signs=signs,
        prefix=prefix,
    )


def _x1_two_specs(rng, signs):
    out = [
        SeriesSpec(variant=Variant.ALT_LUROTH_B, u1=2, m=1, signs=signs),
        SeriesSpec(variant=Variant.ALT_LUROTH_B, u1=2, m=2, signs=signs),
        SeriesSpec(variant=Variant.LUROTH_B, u1=2, m=2, signs=signs),
        SeriesSpec(variant=Variant.LUROTH_B, u1=2, m=3, signs=signs),
        SeriesSpec(
            variant=Variant.ENGEL_B, u1=2, m=1,
            v=IntSource("const", (2,)), signs=signs,
        ),
        SeriesSpec(
            variant=Variant.ENGEL_B, u1=2, m=2,
            v=IntSource("const", (3,)), signs=signs,
        ),
    ]
    for _ in range(2):
        xs = [2]
        for _ in range(5):
            xs.append(xs[-1] * xs[-1] * rng.randint(2, 9))
        out.append(
            SeriesSpec(variant=Variant.EXPLICIT_X, x_list=tuple(xs), signs=signs)
        )
    return out


def test_criterion_5_length_formulas(announce):
    def check():
        rng = random.Random(299792458)
        generics = [_generic_recurrence_spec(rng) for _ in range(20)]
        generics += [_generic_explicit_spec(rng) for _ in range(24)]
        generics += [_generic_explicit_spec(rng, deep_prefix=True) for _ in range(6)]
        assert len(generics) == 50
        for spec in generics:
            assert classify_case(spec) is LengthCase.GENERIC, spec
            _, trace = expand_series(spec, 6)
            k = trace.k
            for st in trace.stages:
                assert st.cf.length == (k + 2) * 2 ** (st.n - 1) - 2
                BUILT_CFS.append(st.cf)

        for spec in _x1_two_specs(rng, SignSeq.plus()):
            assert classify_case(spec) is LengthCase.SPECIAL_ENGEL_X1_EQ_2, spec
            _, trace = expand_series(spec, 6)
            lengths = [st.cf.length for st in trace.stages]
            assert lengths[:2] == [1, 4]
            assert lengths[2:] == [5 * 2 ** (n - 2) for n in range(3, 7)]
            BUILT_CFS.extend(st.cf for st in trace.stages)

        for spec in _x1_two_specs(rng, SignSeq.alternating()):
            assert classify_case(spec) is LengthCase.SPECIAL_PIERCE_X1_EQ_2, spec
            _, trace = expand_series(spec, 6)
            lengths = [st.cf.length for st in trace.stages]
            assert lengths[:2] == [1, 4]
            assert lengths[2:] == [5 * 2 ** (n - 2) - 2 for n in range(3, 7)]
            BUILT_CFS.extend(st.cf for st in trace.stages)

    _run(announce, 5, "closed-form word lengths", check, bound=60.0)


# ---------------------------------------------------------------- criterion 6


def test_criterion_6_determinant_identity(announce):
    def check():
        assert len(BUILT_CFS) > 1000, "criteria 2-5 must run before the sweep"
        for cf in BUILT_CFS:
            assert determinant_ok(cf)

    _run(announce, 6, f"determinant identity over {len(BUILT_CFS)} CFs", check)


# ---------------------------------------------------------------- criterion 7


def _census_specs(rng):
    zs_pool = [101, 211, 307, 401, 503, 607, 701, 809, 907]
    specs = [(builtin_spec("lur1"), None)]
    for signs in (SignSeq.plus(), SignSeq.alternating(), SignSeq.periodic([-1, 1, 1]),
                  SignSeq.plus(), SignSeq.alternating()):
        zs = rng.sample(zs_pool, 5)
        x1 = rng.choice([5, 7])
        xs = [x1]
        for z in zs:
            xs.append(xs[-1] * xs[-1] * z)
        specs.append(
            (SeriesSpec(variant=Variant.EXPLICIT_X, x_list=tuple(xs), signs=signs),
             zs)
        )
    return specs


def test_criterion_7_coefficient_census(announce):
    def check():
        rng = random.Random(6674)
        for spec, zs in _census_specs(rng):
            _, trace = expand_series(spec, 6)
            assert trace.case is LengthCase.GENERIC
            word = trace.stages[-1].cf.word
            if zs is None:
                zs = [st.z for st in trace.states[1:]]
            for j, z in enumerate(zs, start=2):
                assert word.count(z - 1) == 2 ** (6 - j), (spec, j)

    _run(announce, 7, "multiplier census at stage 6", check)


# ---------------------------------------------------------------- criterion 8


def test_criterion_8_irrationality_exponents(announce):
    def check():
        target_a = 2 + math.sqrt(3)
        report = mu_estimate(builtin_spec("lur1"), 8)
        assert abs(report.estimate - target_a) / target_a < 0.05

        target_b = 1 + math.sqrt(2)
        luroth_b = SeriesSpec(variant=Variant.LUROTH_B, u1=3, m=1)
        report = mu_estimate(luroth_b, 8)
        assert abs(report.estimate - target_b) / target_b < 0.05

        report = mu_estimate(builtin_spec("altlur2"), 8)
        assert abs(report.estimate - target_b) / target_b < 0.05

        # the doubly exponential example has multiplier 1 at every fold, so
        # no landmark index exists; open the window at the stage-6 length
        kempner = builtin_spec("kempner:2")
        _, trace = expand_series(kempner, 10)
        w6 = trace.stages[5].cf.length
        report = mu_estimate(kempner, 10, window_start=w6)
        assert abs(report.estimate - 2.0) / 2.0 < 0.10

        assert mu_predicted("A", MuParams()).closed == Surd(
            Fraction(2), Fraction(1), 3
        )
        assert mu_predicted("B", MuParams()).closed == Surd(
            Fraction(1), Fraction(1), 2
        )

    _run(announce, 8, "irrationality exponent estimates", check, bound=120.0)


# ---------------------------------------------------------------- criterion 9


def test_criterion_9_certified_ceilings(announce):
    def check():
        assert alpha_eval(MuParams(C=1.0), 1, 1, 1) == 3

        rng = random.Random(1729)
        for _ in range(100):
            n_terms = rng.randint(1, 3)
            seen, terms = set(), []
            while len(terms) < n_terms:
                r, s = rng.randint(0, 3), rng.randint(0, 3)
                if (r, s) in seen:
                    continue
                seen.add((r, s))
                terms.append(
                    PolyTerm(float(rng.randint(1, 1000)), float(r), float(s))
                )
            params = MuParams(terms=tuple(terms))
            u, v = rng.randint(1, 10**9), rng.randint(1, 10**9)
            expected = sum(
                int(t.c) * u ** int(t.r) * v ** int(t.s) for t in terms
            )
            assert alpha_eval(params, 1, u, v) == expected
            assert alpha_eval(params, 1, u, v, force_ladder=True) == expected

    _run(announce, 9, "certified pseudo-polynomial ceilings", check)
