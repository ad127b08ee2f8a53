"""Command line: ``trichrome solve | verify | generate | experiment``.

Exit codes for ``solve``: 0 colorable, 1 not colorable, 2 undetermined.
``verify``: 0 valid, 1 invalid.  Usage errors exit 64, malformed input 65,
unreadable files 66.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .certificates import (
    CertificateFormatError,
    ColoringCertificate,
    Verdict,
    check_coloring,
    check_uncolorability,
    parse_certificate,
    write_certificate,
)
from .dimacs import DimacsError, parse_dimacs
from .experiments import DEFAULT_MAX_CALLS, format_summary, planar_alpha_probe, run_experiment
from .generators import GeneratorError, GenSpec, canonical_model, generate, write_instance
from .graph import PreconditionError
from .solver import MODES, SolveConfig, bfs_3col, observed_alpha, solve

EX_USAGE, EX_DATAERR, EX_NOINPUT = 64, 65, 66
UNDETERMINED_MESSAGE = "undetermined for the current value of α"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def default_seed() -> int:
    raw = os.environ.get("TRICHROME_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise _Fail(EX_USAGE, f"TRICHROME_SEED must be an integer, got {raw!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Fail(EX_NOINPUT, f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str):
    try:
        return parse_dimacs(_read(path))
    except DimacsError as exc:
        raise _Fail(EX_DATAERR, f"{path}: {exc}") from None


def cmd_solve(args) -> int:
    g = _graph(args.file)
    try:
        if args.alpha is not None:
            out = solve(g, args.alpha, args.mode, args.max_calls)
            alpha = args.alpha
        else:
            seed = default_seed() if args.seed is None else args.seed
            cfg = SolveConfig(alpha=0, alpha_max=args.alpha_max, mode=args.mode,
                              rng_seed=seed, max_calls=args.max_calls)
            out, seen = bfs_3col(g, cfg)
            alpha = seen.value
            if args.shuffles:
                worst = observed_alpha(g, cfg, args.shuffles)
                print(f"alpha over {args.shuffles} shuffled orderings: {worst.value}"
                      + (" (exceeded)" if worst.exceeded else ""))
    except PreconditionError as exc:
        raise _Fail(EX_DATAERR, str(exc)) from None

    if out.verdict is Verdict.UNDETERMINED:
        print(UNDETERMINED_MESSAGE)
        return 2
    word = "colorable" if out.verdict is Verdict.YES else "not colorable"
    print(f"{word} (verdict {out.verdict}, alpha {alpha}, calls {out.stats.calls})")
    if args.cert:
        Path(args.cert).write_text(write_certificate(out.payload))
    return 0 if out.verdict is Verdict.YES else 1


def cmd_verify(args) -> int:
    g = _graph(args.graph)
    try:
        cert = parse_certificate(_read(args.cert))
    except CertificateFormatError as exc:
        raise _Fail(EX_DATAERR, f"{args.cert}: {exc}") from None
    if isinstance(cert, ColoringCertificate):
        check = check_coloring(g, cert)
    else:
        check = check_uncolorability(g, cert)
    if check.ok:
        print("valid")
        return 0
    where = "/".join(str(i) for i in check.where) if check.where else "-"
    print(f"invalid at step {where}: {check.reason}")
    return 1


def cmd_generate(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    try:
        model = canonical_model(args.model)
        out = Path(args.out)
        for i in range(args.count):
            spec = GenSpec(model, args.n, args.d, seed, i, tuple(args.op_probs) if args.op_probs else None)
            path = write_instance(spec, generate(spec), out)
            print(path)
    except GeneratorError as exc:
        raise _Fail(EX_USAGE, str(exc)) from None
    return 0


def cmd_experiment(args) -> int:
    seed = default_seed() if args.seed is None else args.seed
    out = Path(args.out)
    if args.which == "planar-probe":
        frac, outcomes = planar_alpha_probe(args.count or 500, seed, out, jobs=args.jobs)
        print(f"resolved at alpha <= 1: {frac:.4f} of {len(outcomes)}")
        return 0
    summary, _ = run_experiment(int(args.which), args.scale, seed, out, args.jobs, args.alpha_max,
                                args.max_calls, args.group)
    sys.stdout.write(format_summary(summary))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="trichrome", description="Exact 3-coloring with checkable answers.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decide 3-colorability of a DIMACS graph")
    s.add_argument("file")
    budget = s.add_mutually_exclusive_group()
    budget.add_argument("--alpha", type=int, help="fixed recursion budget")
    budget.add_argument("--auto", action="store_true", help="raise the budget until decided (default)")
    s.add_argument("--alpha-max", type=int, default=6)
    s.add_argument("--mode", choices=MODES, default="improved")
    s.add_argument("--cert", help="write the certificate here")
    s.add_argument("--shuffles", type=int, default=0, help="also report alpha over N random orderings")
    s.add_argument("--max-calls", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a certificate against a graph")
    v.add_argument("graph")
    v.add_argument("cert")
    v.set_defaults(func=cmd_verify)

    gen = sub.add_parser("generate", help="write random instances as DIMACS files")
    gen.add_argument("--model", required=True, help="er, pseudoplanar or planar4reg")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=float, default=None, help="average degree")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--op-probs", type=float, nargs=4, metavar="P")
    gen.add_argument("--out", default=".")
    gen.set_defaults(func=cmd_generate)

    e = sub.add_parser("experiment", help="run a sweep and write CSV plus a summary")
    e.add_argument("which", choices=["1", "2", "3", "4", "planar-probe"])
    e.add_argument("--scale", choices=["desk", "full"], default="desk")
    e.add_argument("--out", default="results")
    e.add_argument("--seed", type=int, default=None)
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--alpha-max", type=int, default=6)
    e.add_argument("--max-calls", type=int, default=DEFAULT_MAX_CALLS,
                   help="decision-call budget per instance; 0 for none")
    e.add_argument("--group", type=int, default=None, help="override the group size")
    e.add_argument("--count", type=int, default=None, help="instances for planar-probe")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "max_calls", None) == 0:
        args.max_calls = None
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"trichrome: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
