"""Command line front end.

    sdlab compute <file> --sdepth|--depth|--hilbert|--decompose [--json] [--char p]
    sdlab polarize <file> [--full | --steps <var>] [--out F] [--trace F]
    sdlab verify <tag> [--trials N] [--seed S] [--max-n K] [--max-deg D]

Exit codes: 0 success, 1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .homology import depth
from .monomial import (
    ModuleSpec,
    ParseError,
    SpecError,
    format_module_spec,
    format_monomial,
    hilbert_series,
    parse_module_spec,
)
from .polarization import full_polarize, one_step_polarize
from .stanley import partition_to_decomposition, partition_to_json, sdepth
from .verify import TAGS, run_verification

_TAG_HELP = {
    "thm-main": "one polarization step raises Stanley depth by one",
    "prop-4.1": "one polarization step raises depth by one and divides the Hilbert series by (1-t)",
    "cor-conj": "sdepth minus depth is invariant under full polarization",
    "hvz": "descending search equals exhaustive partition enumeration",
    "lem-1dim": "maps out of a chain certify shift 1 - codim with interval preimages",
    "lem-interval": "product maps certify the sum of the factor shifts",
    "thm-joinmeet": "join/meet-preserving maps split into one-dim factors, shift dim - codim",
    "prop-5.1": "last-variable shift move keeps Stanley depth",
    "prop-5.2": "last-variable doubling move raises Stanley depth by one",
}


def _read_spec(path: str) -> ModuleSpec:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_module_spec(text)


def _cmd_compute(args) -> int:
    spec = _read_spec(args.file)
    if args.char is not None and args.char != 0:
        if args.char < 2 or any(args.char % d == 0 for d in range(2, int(args.char**0.5) + 1)):
            print(f"error: --char {args.char} is not prime", file=sys.stderr)
            return 1
    out: dict = {}
    if args.which == "sdepth":
        res = sdepth(spec)
        out = {"sdepth": res.value, "partition": partition_to_json(res.partition)}
        if not args.json:
            print(f"sdepth = {res.value}")
            for iv in res.partition.intervals:
                print(f"  [{list(iv.lo)}, {list(iv.hi)}]")
    elif args.which == "depth":
        value = depth(spec, characteristic=args.char)
        out = {"depth": value}
        if not args.json:
            print(f"depth = {value}")
    elif args.which == "hilbert":
        series = hilbert_series(spec)
        out = {
            "numerator": list(series.numerator),
            "denominator_power": series.denom_power,
            "display": str(series),
        }
        if not args.json:
            print(f"hilbert series = {series}")
    else:  # decompose
        res = sdepth(spec)
        dec = partition_to_decomposition(res.partition)
        out = {
            "sdepth": res.value,
            "partition": partition_to_json(res.partition),
            "parts": [
                {
                    "monomial": list(a),
                    "variables": sorted(spec.ring.names[j] for j in z),
                }
                for a, z in dec.parts
            ],
        }
        if not args.json:
            print(f"sdepth = {res.value}")
            for a, z in dec.parts:
                names = ", ".join(sorted(spec.ring.names[j] for j in z))
                print(f"  {format_monomial(a, spec.ring)} * K[{names}]")
    if args.json:
        print(json.dumps(out, sort_keys=True))
    return 0


def _cmd_polarize(args) -> int:
    spec = _read_spec(args.file)
    if args.steps is not None:
        try:
            var = spec.ring.variable_index(args.steps)
        except SpecError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        step = one_step_polarize(spec, var)
        result = step.polarized
        trace = {"steps": [step.to_json()]}
    else:
        result, full_trace = full_polarize(spec)
        trace = full_trace.to_json()
    text = format_module_spec(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    trace_path = args.trace
    if trace_path is None and args.out:
        trace_path = args.out + ".trace.json"
    if trace_path:
        Path(trace_path).write_text(json.dumps(trace, indent=2, sort_keys=True), encoding="utf-8")
    return 0


def _cmd_verify(args) -> int:
    report = run_verification(
        args.tag,
        trials=args.trials,
        seed=args.seed,
        max_n=args.max_n,
        max_deg=args.max_deg,
        max_gens=args.max_gens,
    )
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(report.summary())
        for failure in report.failures:
            print("failure (this would be an implementation bug, not a counterexample):")
            print(json.dumps(failure, indent=2, sort_keys=True))
    return 0 if report.ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdlab",
        description="Exact Stanley depth, depth, Hilbert series and polarization of I/J",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute one invariant of a quotient file")
    compute.add_argument("file", help="quotient description file, or - for stdin")
    which = compute.add_mutually_exclusive_group(required=True)
    which.add_argument("--sdepth", dest="which", action="store_const", const="sdepth")
    which.add_argument("--depth", dest="which", action="store_const", const="depth")
    which.add_argument("--hilbert", dest="which", action="store_const", const="hilbert")
    which.add_argument("--decompose", dest="which", action="store_const", const="decompose")
    compute.add_argument("--json", action="store_true", help="machine readable output")
    compute.add_argument("--char", type=int, default=None, help="coefficient characteristic (prime, or 0)")
    compute.set_defaults(func=_cmd_compute)

    polarize = sub.add_parser("polarize", help="polarize a quotient file")
    polarize.add_argument("file")
    mode = polarize.add_mutually_exclusive_group()
    mode.add_argument("--full", action="store_true", help="full squarefree polarization (default)")
    mode.add_argument("--steps", metavar="VAR", help="single step on the named variable")
    polarize.add_argument("--out", help="write the polarized quotient here instead of stdout")
    polarize.add_argument("--trace", help="write the replayable JSON trace here")
    polarize.set_defaults(func=_cmd_polarize)

    verify = sub.add_parser(
        "verify",
        help="run a randomized verification suite",
        epilog="tags: " + "; ".join(f"{k}: {v}" for k, v in _TAG_HELP.items()),
    )
    verify.add_argument("tag", choices=sorted(TAGS))
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--max-n", type=int, default=3)
    verify.add_argument("--max-deg", type=int, default=3)
    verify.add_argument("--max-gens", type=int, default=4)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SpecError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
