"""okounkov: command-line front end.

Every command prints its primary result to stdout (or ``--output``) in the
chosen ``--format``.  ``--out-dir`` additionally writes every artifact the
command can produce (JSON report, CSV table, SVG figure) into a directory.

Exit codes: 0 success, 2 bad input, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings

from . import __version__
from .exactmath import Polytope
from .families import GradedFamily, epsilon_sequence, length_sequence, vol_mult_check
from .monomial import MonomialIdeal, PairIdeal, length, pair_length
from .plotting import body_svg, sequence_svg
from .semigroup import empirical_ratio, fujita, semigroup_from_json, structure
from .serialization import DEFAULT_PRECISION, dumps, parse_rational, ratio_csv, sequence_csv

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


class InputError(Exception):
    pass


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}")


def _positive(name: str):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer")
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be positive")
        return v
    return parse


def _emit(args, artifacts: dict[str, str], default: str) -> None:
    """Send the artifact matching --format to stdout/--output and all of them to --out-dir."""
    fmt = args.format or default
    if fmt not in artifacts:
        raise InputError(f"format {fmt!r} is not available for this command "
                         f"(choose from {', '.join(sorted(artifacts))})")
    text = artifacts[fmt]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif fmt != "svg":
        sys.stdout.write(text)
    else:
        raise InputError("svg output needs --output or --out-dir")
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for ext, body in artifacts.items():
            with open(os.path.join(args.out_dir, f"{args.command}.{ext}"), "w", encoding="utf-8") as fh:
                fh.write(body)


def _report_artifacts(report, args, title: str) -> dict[str, str]:
    return {
        "json": dumps(report.to_json()),
        "csv": sequence_csv(report.rows(), args.precision),
        "svg": sequence_svg(report.levels, report.normalized, title, report.window, report.estimate),
    }


def _ideal(data: dict):
    if "A" in data and "B" in data:
        return PairIdeal.from_json(data)
    return MonomialIdeal.from_json(data)


def _window(args):
    return tuple(args.window) if args.window else None


# ---------------------------------------------------------------------------
# commands


def cmd_length(args) -> None:
    I = _ideal(_load(args.ideal))
    l = pair_length(I) if isinstance(I, PairIdeal) else length(I)
    shown = "infinite" if l == math.inf else str(l)
    artifacts = {
        "json": dumps({"ideal": I.to_json(), "length": None if l == math.inf else l, "finite": l != math.inf}),
        "csv": f"ideal,length\n\"{I}\",{shown}\n",
        "text": shown + "\n",
    }
    _emit(args, artifacts, "text")


def cmd_limit(args) -> None:
    f = GradedFamily.from_json(_load(args.family))
    rep = length_sequence(f, args.max_n, window=_window(args), threshold=parse_rational(args.threshold))
    _emit(args, _report_artifacts(rep, args, f"{f.kind}, d={f.d}"), "json")


def cmd_okounkov(args) -> None:
    S = semigroup_from_json(_load(args.semigroup))
    rep = structure(S, probe_level=args.max_level)
    seq = empirical_ratio(S, args.max_k, rep) if args.max_k else []
    payload = {"report": rep.to_json(), "empirical": [[k, [r.numerator, r.denominator]] for k, r in seq]}
    artifacts = {"json": dumps(payload), "csv": ratio_csv(seq, args.precision)}
    if rep.body.ambient_dim <= 2:
        artifacts["svg"] = body_svg(rep.body, f"body at level {rep.m}")
    _emit(args, artifacts, "json")


def cmd_fujita(args) -> None:
    S = semigroup_from_json(_load(args.semigroup))
    base = structure(S)
    rep = fujita(S, args.p, args.max_k, base)
    payload = rep.to_json()
    payload["kk_limit"] = [base.limit.numerator, base.limit.denominator]
    artifacts = {"json": dumps(payload), "csv": ratio_csv(rep.sequence, args.precision)}
    if rep.sequence:
        ks, rs = zip(*rep.sequence)
        artifacts["svg"] = sequence_svg(ks, rs, f"subsemigroup at level {rep.level}",
                                        estimate=rep.subsemigroup_limit, ylabel="#(k*S_pm) / (k p)^q")
    _emit(args, artifacts, "json")


def cmd_volmult(args) -> None:
    f = GradedFamily.from_json(_load(args.family))
    rep = vol_mult_check(f, args.max_n, args.max_p)
    artifacts = {
        "json": dumps(rep.to_json()),
        "csv": ratio_csv(rep.rhs, args.precision, key="p"),
        "svg": sequence_svg(rep.lhs.levels, rep.lhs.normalized, "colength side", rep.lhs.window,
                            rep.rhs[-1][1] if rep.rhs else None),
    }
    _emit(args, artifacts, "json")


def cmd_epsilon(args) -> None:
    I = MonomialIdeal.from_json(_load(args.ideal))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = epsilon_sequence(I, args.max_n, window=_window(args))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(args, _report_artifacts(rep, args, f"saturation quotient of {I}"), "json")


def cmd_counterexample(args) -> None:
    if args.d < 1:
        raise InputError("d >= 1 required")
    make = GradedFamily.sigma_counterexample if args.model == "sigma" else GradedFamily.dao_smirnov
    f = make(args.d)
    rep = length_sequence(f, args.max_n, window=_window(args), threshold=parse_rational(args.threshold))
    verdict = "oscillating" if rep.oscillating else "no oscillation detected"
    print(f"{args.model} d={args.d}: {verdict} "
          f"(window {rep.window[0]}..{rep.window[1]}, min {float(rep.window_min):.6g}, "
          f"max {float(rep.window_max):.6g})", file=sys.stderr)
    _emit(args, _report_artifacts(rep, args, f"{args.model}, d={args.d}"), "csv")


def cmd_render(args) -> None:
    """Redraw an SVG from a JSON report written by another command."""
    data = _load(args.report)
    if "report" in data:
        data = data["report"]
    if "body" in data:
        svg = body_svg(Polytope.from_json(data["body"]), f"body at level {data.get('m', '?')}")
    elif "sequence" in data and data["sequence"] and isinstance(data["sequence"][0], dict):
        levels = [row["n"] for row in data["sequence"]]
        values = [parse_rational(row["normalized"]) for row in data["sequence"]]
        est = parse_rational(data["estimate"]) if data.get("estimate") else None
        svg = sequence_svg(levels, values, window=tuple(data["window"]) if data.get("window") else None,
                           estimate=est)
    elif "lhs" in data:
        lhs = data["lhs"]
        svg = sequence_svg([r["n"] for r in lhs["sequence"]],
                           [parse_rational(r["normalized"]) for r in lhs["sequence"]], "colength side")
    else:
        raise InputError("report has neither a body nor a sequence")
    args.format = "svg"
    _emit(args, {"svg": svg}, "svg")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="okounkov", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"okounkov {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats):
        sp.add_argument("--format", choices=formats, default=None)
        sp.add_argument("--output", "-o", help="write the --format artifact here instead of stdout")
        sp.add_argument("--out-dir", help="write every artifact (json, csv, svg) into this directory")
        sp.add_argument("--precision", type=_positive("precision"), default=DEFAULT_PRECISION,
                        help="significant digits for decimal columns")

    def windowed(sp):
        sp.add_argument("--window", nargs=2, type=_positive("window"), metavar=("LO", "HI"),
                        help="levels used for the oscillation test and tail fit")

    sp = sub.add_parser("length", help="colength of a monomial or pair ideal")
    sp.add_argument("ideal")
    common(sp, ["text", "json", "csv"])
    sp.set_defaults(func=cmd_length)

    sp = sub.add_parser("limit", help="normalized colength sequence of a graded family")
    sp.add_argument("family")
    sp.add_argument("--max-n", type=_positive("max-n"), default=60)
    sp.add_argument("--threshold", default="23/20")
    windowed(sp)
    common(sp, ["json", "csv", "svg"])
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("okounkov", help="cone invariants and predicted limit of a semigroup")
    sp.add_argument("semigroup")
    sp.add_argument("--max-level", type=_positive("max-level"), default=None,
                    help="probe level for tabulated semigroups")
    sp.add_argument("--max-k", type=int, default=20)
    common(sp, ["json", "csv", "svg"])
    sp.set_defaults(func=cmd_okounkov)

    sp = sub.add_parser("fujita", help="approximation by the subsemigroup of one slice")
    sp.add_argument("semigroup")
    sp.add_argument("--p", type=_positive("p"), required=True)
    sp.add_argument("--max-k", type=_positive("max-k"), default=20)
    common(sp, ["json", "csv", "svg"])
    sp.set_defaults(func=cmd_fujita)

    sp = sub.add_parser("volmult", help="colength limit against e(I_p)/p^d")
    sp.add_argument("family")
    sp.add_argument("--max-n", type=_positive("max-n"), default=60)
    sp.add_argument("--max-p", type=_positive("max-p"), default=20)
    common(sp, ["json", "csv", "svg"])
    sp.set_defaults(func=cmd_volmult)

    sp = sub.add_parser("epsilon", help="normalized l((I^n)^sat / I^n)")
    sp.add_argument("ideal")
    sp.add_argument("--max-n", type=_positive("max-n"), default=30)
    windowed(sp)
    common(sp, ["json", "csv", "svg"])
    sp.set_defaults(func=cmd_epsilon)

    sp = sub.add_parser("counterexample", help="jump-driven families whose normalized colength oscillates")
    sp.add_argument("--model", choices=["sigma", "dao-smirnov"], default="sigma")
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--max-n", type=_positive("max-n"), default=300)
    sp.add_argument("--threshold", default="23/20")
    windowed(sp)
    common(sp, ["json", "csv", "svg"])
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("render", help="draw an SVG from a saved JSON report")
    sp.add_argument("report")
    common(sp, ["svg"])
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (InputError, ValueError, KeyError, TypeError, OverflowError) as exc:
        print(f"okounkov {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything else is a bug
        print(f"okounkov {args.command}: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
