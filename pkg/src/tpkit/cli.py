"""Command-line front end: JSON on stdout, a one-line summary on stderr.

Exit status is 0 for success or a non-violated result, 1 when a mathematical
violation is found and 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .exact import format_rat, parse_rat
from .genfun import ASWEParams, CoeffSeq, expand_descriptor
from .preserver import (
    NOT_PRESERVER,
    conjecture_scan,
    decide_finite_preserver,
    decide_meromorphic_preserver,
    hadamard,
    l1_battery,
    l1_battery_grid,
)
from .reproduce import TARGETS, run as run_reproduction
from .tpcheck import DEFAULT_M, DEFAULT_WINDOW, minor_scan, tp_infty_finite_decide

DEFAULT_N = 32

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# Sequence sources


def _from_json(data: Any, N: int) -> CoeffSeq:
    if isinstance(data, list):
        return CoeffSeq.user([parse_rat(str(x)) for x in data])
    if not isinstance(data, dict):
        raise UsageError("JSON sequence must be an object or a list")
    if "coeffs" in data and "N" in data:
        return CoeffSeq.from_json(data)
    return expand_descriptor({"N": N, **data})


def parse_sequence(source: str, N: int = DEFAULT_N, exact: bool = False) -> CoeffSeq:
    """Read a sequence from an inline "p/q" list, JSON text, ``@file`` or ``-`` (stdin).

    JSON may be a serialized CoeffSeq or a family descriptor such as
    ``{"family": "aswe", "betas": "1,1/2"}``.
    """
    text = source
    if source == "-":
        text = sys.stdin.read()
    elif source.startswith("@"):
        try:
            text = Path(source[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {source[1:]}: {exc.strerror}") from None
    text = text.strip()
    if not text:
        raise UsageError("empty sequence")
    if text[0] in "{[":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON sequence: {exc}") from None
        seq = _from_json(data, N)
        if exact and not seq.exact_tail:
            seq = CoeffSeq.user(seq.coeffs, exact_tail=True)
        return seq
    coeffs = [parse_rat(x) for x in text.replace(";", ",").split(",") if x.strip()]
    return CoeffSeq.user(coeffs, exact_tail=exact)


def _descriptor(args: argparse.Namespace) -> dict:
    desc: dict[str, Any] = {"family": args.family, "N": args.N}
    if args.family == "aswe":
        desc.update(C=args.C, q=_shift(args), gamma=args.gamma, alphas=args.alpha, betas=args.beta)
    elif args.family == "e1":
        if not args.q:
            raise UsageError("e1 needs --q with the comma list q_2, q_3, ...")
        desc["q"] = args.q
    elif args.family == "partial_theta":
        desc["a"] = args.a
    elif args.family == "l1":
        desc.update(c=args.c, d=args.d, n=args.n, index=args.index)
    return desc


def _rat_list(text: str) -> tuple:
    return tuple(parse_rat(x) for x in text.split(",") if x.strip())


def _shift(args: argparse.Namespace) -> int:
    try:
        return int(args.q or 0)
    except ValueError:
        raise UsageError(f"aswe shift --q must be an integer, got {args.q!r}") from None


def _aswe_params(args: argparse.Namespace) -> ASWEParams:
    return ASWEParams(
        C=parse_rat(args.C), q=_shift(args), gamma=parse_rat(args.gamma),
        alphas=_rat_list(args.alpha), betas=_rat_list(args.beta),
    )


def source_sequence(args: argparse.Namespace) -> CoeffSeq:
    if args.seq is not None and args.family is not None:
        raise UsageError("give either --seq or --family, not both")
    if args.seq is not None:
        return parse_sequence(args.seq, args.N, args.exact)
    if args.family is not None:
        return expand_descriptor(_descriptor(args))
    raise UsageError("no sequence: use --seq or --family")


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("family descriptor")
    g.add_argument("--family", choices=("aswe", "e1", "partial_theta", "l1"))
    g.add_argument("--C", default="1", help="aswe constant")
    g.add_argument("--q", default="", help="aswe shift (integer) or e1 parameters q_2,q_3,...")
    g.add_argument("--gamma", default="0", help="aswe exponential rate")
    g.add_argument("--alpha", default="", help="aswe zeros as a comma list")
    g.add_argument("--beta", default="", help="aswe poles as a comma list")
    g.add_argument("--a", default="2", help="partial theta base")
    g.add_argument("--c", default="2", help="l1 family parameter c")
    g.add_argument("--d", default="1", help="l1 family parameter d")
    g.add_argument("--n", type=int, default=0, help="l1 family delay n")
    g.add_argument("--index", type=int, default=1, help="l1 family index 1..7")


def _add_source_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seq", help='inline "p/q" list, JSON, @file or - for stdin')
    p.add_argument("--exact", action="store_true", help="the inline sequence is finitely supported")
    p.add_argument("--N", type=int, default=DEFAULT_N, help="truncation order")
    _add_family_flags(p)


def _add_window_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, default=DEFAULT_M, help="largest minor order")
    p.add_argument("--R", type=int, default=DEFAULT_WINDOW, help="window rows")
    p.add_argument("--cols", "--C-window", dest="cols", type=int, default=None,
                   help="window columns (defaults to R)")
    p.add_argument("--cap", type=int, default=None, help="determinant budget (default TPKIT_BUDGET or 2000000)")


# --------------------------------------------------------------------------
# Commands


def cmd_expand(args) -> tuple[dict, int, str]:
    seq = source_sequence(args)
    return seq.to_json(), EXIT_OK, f"{seq.N} coefficients, exact_tail={seq.exact_tail}"


def cmd_tpcheck(args) -> tuple[dict, int, str]:
    seq = source_sequence(args)
    if seq.exact_tail and not args.scan:
        report = tp_infty_finite_decide(seq)
    else:
        report = minor_scan(seq, args.m, args.R, args.cols or args.R, cap=args.cap)
    code = EXIT_VIOLATION if report.violated else EXIT_OK
    summary = report.verdict
    if report.witness is not None:
        w = report.witness
        summary += f": minor rows {list(w.rows)} cols {list(w.cols)} = {format_rat(w.value)}"
    return report.to_json(), code, summary


def cmd_hadamard(args) -> tuple[dict, int, str]:
    a = parse_sequence(args.a_seq, args.N)
    b = parse_sequence(args.b_seq, args.N)
    image = hadamard(a, b)
    return image.to_json(), EXIT_OK, f"{image.N} coefficients, exact_tail={image.exact_tail}"


def cmd_preserver(args) -> tuple[dict, int, str]:
    if args.family == "aswe" and args.beta and args.seq is None:
        verdict = decide_meromorphic_preserver(_aswe_params(args))
    else:
        seq = source_sequence(args)
        if not seq.exact_tail:
            raise UsageError(
                "preserver needs a finitely supported sequence (--exact) or an aswe family with poles; "
                "use conjecture-scan for other inputs"
            )
        verdict = decide_finite_preserver(seq)
    code = EXIT_VIOLATION if verdict.decision == NOT_PRESERVER else EXIT_OK
    return verdict.to_json(), code, f"{verdict.decision} ({verdict.basis})"


def cmd_l1_battery(args) -> tuple[dict, int, str]:
    seq = source_sequence(args)
    cols = args.cols or args.R
    if args.grid:
        results = l1_battery_grid(seq, args.m, args.R, cols, cap=args.cap)
    else:
        results = [
            (f"family{idx}", rep)
            for idx, rep in l1_battery(seq, parse_rat(args.c), parse_rat(args.d), args.n, args.m, args.R, cols,
                                       cap=args.cap)
        ]
    violated = [name for name, rep in results if rep.violated]
    out = {"results": {name: rep.to_json() for name, rep in results}, "violated": violated}
    code = EXIT_VIOLATION if violated else EXIT_OK
    summary = "violated by " + ", ".join(violated) if violated else f"all {len(results)} images consistent"
    return out, code, summary


def cmd_conjecture_scan(args) -> tuple[dict, int, str]:
    seq = source_sequence(args)
    degrees = [int(x) for x in args.degrees.split(",") if x.strip()]
    verdict = conjecture_scan(seq, args.l_max, degrees)
    return verdict.to_json(), EXIT_OK, f"{len(verdict.details)} remainder checks (evidence only)"


def cmd_reproduce(args) -> tuple[dict, int, str]:
    targets = TARGETS if args.which == "all" else (args.which,)
    results = [run_reproduction(t, seed=args.seed) for t in targets]
    failed = [r["target"] for r in results if not r["passed"]]
    out: dict[str, Any] = results[0] if len(results) == 1 else {"targets": results}
    out = {**out, "seed": args.seed}
    if failed:
        steps = [f"{r['target']}: {s['step']}" for r in results for s in r["steps"] if not s["ok"]]
        return out, EXIT_VIOLATION, "failed " + "; ".join(steps)
    return out, EXIT_OK, "passed " + ", ".join(targets)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpkit", description="Exact total-positivity checks for Hadamard products.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="coefficient prefix of a family")
    _add_source_flags(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("tpcheck", parents=[common], help="minor scan, or exact decision for finite sequences")
    _add_source_flags(p)
    _add_window_flags(p)
    p.add_argument("--scan", action="store_true", help="minor scan even when the sequence is finite")
    p.set_defaults(func=cmd_tpcheck)

    p = sub.add_parser("hadamard", parents=[common], help="coefficientwise product of two sequences")
    p.add_argument("--a", dest="a_seq", required=True, help="first sequence (same forms as --seq)")
    p.add_argument("--b", dest="b_seq", required=True, help="second sequence")
    p.add_argument("--N", type=int, default=DEFAULT_N, help="truncation order for descriptors")
    p.set_defaults(func=cmd_hadamard)

    p = sub.add_parser("preserver", parents=[common], help="decide whether a sequence preserves TP-infinity")
    _add_source_flags(p)
    p.set_defaults(func=cmd_preserver)

    p = sub.add_parser("l1-battery", parents=[common], help="scan images of the necessary-condition test sequences")
    _add_source_flags(p)
    _add_window_flags(p)
    p.add_argument("--grid", action="store_true", help="run the default (c, d, n) grid")
    p.set_defaults(func=cmd_l1_battery)

    p = sub.add_parser("conjecture-scan", parents=[common], help="real-rootedness of truncated remainders (evidence only)")
    _add_source_flags(p)
    p.add_argument("--l-max", type=int, default=3)
    p.add_argument("--degrees", default="2,3,4", help="truncation degrees as a comma list")
    p.set_defaults(func=cmd_conjecture_scan)

    p = sub.add_parser("reproduce", parents=[common], help="self-checking reproduction targets")
    p.add_argument("which", choices=(*TARGETS, "all"))
    p.add_argument("--seed", type=int, default=0, help="seed for the sampled parameters")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code, summary = args.func(args)
    except (ValueError, TypeError, IndexError) as exc:
        print(f"tpkit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(out, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"tpkit {args.command}: {summary}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
