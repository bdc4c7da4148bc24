"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 malformed input or usage.
All output is JSON (one object per line unless --pretty) except where a bare
CF text line is the natural answer. Big integers travel as decimal strings.

The --spec argument of gen/expand/verify/mu takes either a path to a JSON
spec file or the name of a builtin example (lur1, altlur2, zjisj,
kempner:<u>); files win when both exist. The digit budget for generated
integers comes from --digit-budget, else the FOLDCF_DIGIT_BUDGET environment
variable, else the library default of one million decimal digits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .catalog import BUILTIN_NAMES, builtin_spec
from .cf import format_cf, parse_cf
from .dioph import MuReport, mu_estimate
from .errors import FoldcfError, SpecError, UnknownExampleError
from .expand import ExpansionTrace, VerifyReport, expand_series, verify_expansion
from .fold import FoldStep, fold, fold_integer
from .rational import format_rational
from .series import (
    DEFAULT_DIGIT_BUDGET,
    SeriesSpec,
    SeriesState,
    gen_sequences,
    load_spec,
    spec_to_json,
)

ENV_BUDGET = "FOLDCF_DIGIT_BUDGET"


def _opt_str(x) -> str | None:
    return None if x is None else str(x)


def _state_json(st: SeriesState) -> dict:
    return {
        "n": st.n,
        "u": _opt_str(st.u),
        "u_next": _opt_str(st.u_next),
        "v": _opt_str(st.v),
        "x": str(st.x),
        "rho": _opt_str(st.rho),
        "z": str(st.z),
    }


def _fold_step_json(step: FoldStep) -> dict:
    return {
        "z": str(step.z),
        "sign": step.sign,
        "length_before": step.length_before,
        "length_after": step.length_after,
        "concatenations": step.concatenations,
        "raw_word": [str(a) for a in step.raw_word],
    }


def _trace_json(cf, trace: ExpansionTrace) -> dict:
    return {
        "cf": format_cf(cf),
        "value": format_rational(trace.stages[-1].value),
        "case": trace.case.value,
        "k": trace.k,
        "stages": [
            {
                "n": st.n,
                "cf": format_cf(st.cf),
                "length": st.cf.length,
                "predicted_length": st.predicted_length,
                "value": format_rational(st.value),
                "fold": None if st.step is None else _fold_step_json(st.step),
            }
            for st in trace.stages
        ],
    }


def _verify_json(report: VerifyReport) -> dict:
    return {
        "case": report.case.value,
        "k": report.k,
        "ok": report.ok,
        "error": report.error,
        "stages": [
            {
                "n": e.n,
                "value_ok": e.value_ok,
                "word_ok": e.word_ok,
                "det_ok": e.det_ok,
                "length_predicted": e.length_predicted,
                "length_actual": e.length_actual,
                "length_ok": e.length_ok,
            }
            for e in report.entries
        ],
    }


def _mu_json(report: MuReport) -> dict:
    predicted = None
    if report.predicted is not None:
        predicted = {
            "mu": report.predicted.mu,
            "lambda": report.predicted.lam,
            "nu": report.predicted.nu,
            "closed": str(report.predicted.closed),
        }
    return {
        "variant": report.variant,
        "n_max": report.n_max,
        "window_start": report.window_start,
        "max_ratio": report.max_ratio,
        "estimate": report.estimate,
        "predicted": predicted,
        "eta": report.eta,
        "landmarks": [
            {"stage": lm.stage, "index": lm.index, "ratio": lm.ratio}
            for lm in report.landmarks
        ],
        "ratios": [[j, ratio] for j, ratio in report.ratios],
        "log_q": list(report.log_q),
        "log_u": list(report.log_u),
    }


def _dump(obj: dict, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, indent=2)
    return json.dumps(obj)


def _budget_of(args) -> int:
    if getattr(args, "digit_budget", None) is not None:
        budget = args.digit_budget
    else:
        raw = os.environ.get(ENV_BUDGET)
        if raw is None:
            return DEFAULT_DIGIT_BUDGET
        try:
            budget = int(raw, 10)
        except ValueError:
            raise SpecError(f"{ENV_BUDGET} must be an integer, got {raw!r}")
    if budget < 1:
        raise SpecError(f"digit budget must be positive, got {budget}")
    return budget


def _spec_of(args) -> SeriesSpec:
    arg = args.spec
    path = Path(arg)
    if path.is_file():
        return load_spec(path.read_text())
    try:
        return builtin_spec(arg)
    except UnknownExampleError:
        raise SpecError(
            f"--spec {arg!r} is neither a readable file nor a builtin example"
        )


def _n_of(args) -> int:
    if args.n < 1:
        raise SpecError(f"--n must be >= 1, got {args.n}")
    return args.n


def _cmd_gen(args) -> int:
    states = gen_sequences(_spec_of(args), _n_of(args), _budget_of(args))
    for st in states:
        print(_dump(_state_json(st), args.pretty))
    return 0


def _cmd_expand(args) -> int:
    cf, trace = expand_series(_spec_of(args), _n_of(args), _budget_of(args))
    if args.json:
        print(_dump(_trace_json(cf, trace), args.pretty))
    else:
        print(format_cf(cf))
    return 0


def _cmd_verify(args) -> int:
    report = verify_expansion(_spec_of(args), _n_of(args), _budget_of(args))
    print(_dump(_verify_json(report), args.pretty))
    return 0 if report.ok else 1


def _cmd_fold(args) -> int:
    cf = parse_cf(args.cf)
    sign = args.sign
    if cf.word:
        folded, step = fold(cf, args.z, sign)
    else:
        folded, step = fold_integer(cf, args.z, sign)
    print(format_cf(folded))
    print(_dump(_fold_step_json(step), args.pretty))
    return 0


def _cmd_mu(args) -> int:
    report = mu_estimate(
        _spec_of(args), _n_of(args), args.window, _budget_of(args)
    )
    print(_dump(_mu_json(report), args.pretty))
    return 0


def _cmd_examples(args) -> int:
    if args.list:
        for name in BUILTIN_NAMES:
            print(name)
        return 0
    spec = builtin_spec(args.dump)
    print(_dump(spec_to_json(spec), pretty=True))
    return 0


def _parse_sign(text: str) -> int:
    if text in ("+1", "1"):
        return 1
    if text == "-1":
        return -1
    raise argparse.ArgumentTypeError(f"sign must be +1 or -1, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foldcf",
        description="exact continued fractions of sign-twisted Engel and Luroth-type series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("--spec", required=True, help="spec file or builtin name")
            p.add_argument("--n", type=int, required=True, help="number of stages")
        p.add_argument(
            "--digit-budget",
            type=int,
            default=None,
            help=f"cap on generated integer size in decimal digits (env {ENV_BUDGET})",
        )
        p.add_argument("--pretty", action="store_true", help="indent JSON output")

    p = sub.add_parser("gen", help="emit generated sequences as JSON lines")
    common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("expand", help="continued fraction of the partial sum")
    common(p)
    p.add_argument("--json", action="store_true", help="full trace instead of CF text")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("verify", help="check values, words, and length formulas")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("fold", help="apply one fold to a CF")
    p.add_argument("--cf", required=True, help="CF text, e.g. '[0;2,2,1,1]'")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--sign", type=_parse_sign, required=True)
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    p.set_defaults(func=_cmd_fold)

    p = sub.add_parser("mu", help="irrationality exponent estimate and prediction")
    common(p)
    p.add_argument("--window", type=int, default=None, help="first convergent index used")
    p.set_defaults(func=_cmd_mu)

    p = sub.add_parser("examples", help="list or dump builtin example specs")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--list", action="store_true")
    group.add_argument("--dump", metavar="NAME")
    p.set_defaults(func=_cmd_examples)

    return parser


def main(argv=None) -> int:
    # the interpreter's int-to-str guard (4300 digits) is far below the
    # sizes this tool exists to print; the digit budget is the real cap
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FoldcfError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
