"""Command line entry point.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input error,
3 unstable fit or genericity shortfall.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import DEFAULT_CHARACTERISTIC, PolyRing, RingDesc
from .errors import ChernError, InputError
from .lab import SUITES, run_corpus, summarize
from .report import write_report
from .runner import _info, resolve_config, run_text
from .groebner import IdealHandle, krull_dim, length_zero_dim
from .hilbert import evector
from .structure import is_cohen_macaulay

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNSTABLE = 0, 1, 2, 3


def _env_seed() -> int | None:
    raw = os.environ.get("CHERN_SEED")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"CHERN_SEED must be an integer, got {raw!r}") from None


def exit_code(reports) -> int:
    counts = summarize(reports)
    if counts["fail"]:
        return EXIT_FAIL
    if counts["unstable"]:
        return EXIT_UNSTABLE
    return EXIT_OK


def _print_table(reports, out) -> None:
    for r in reports:
        e = "(" + ", ".join(str(x) for x in r.e) + ")" if r.e else "-"
        lam = "" if r.lam is None else f" lambda={r.lam}"
        print(f"{r.verdict:<22} {r.claim:<14} {r.entry:<16} e={e}{lam}", file=out)
    counts = summarize(reports)
    print(" ".join(f"{k}={v}" for k, v in counts.items()), file=out)


def _emit(reports, args, seed, config) -> int:
    if args.json:
        write_report(reports, "json", args.json, seed, config)
    if args.csv:
        write_report(reports, "csv", args.csv)
    _print_table(reports, sys.stdout)
    return exit_code(reports)


def cmd_run(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{args.file} is not valid UTF-8") from None
    cli = {"seed": args.seed, "nmax": args.nmax, "trials": args.trials, "char": args.char}
    if cli["seed"] is None:
        cli["seed"] = _env_seed()
    try:
        reports, cfg = run_text(text, cli)
    except ChernError as exc:
        raise type(exc)(f"{args.file}:{exc}") from None
    return _emit(reports, args, cfg.seed, cfg.as_dict())


def cmd_corpus(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    cfg = resolve_config({"seed": seed, "nmax": args.nmax, "trials": args.trials, "char": args.char}, {})
    reports = run_corpus(args.suite, cfg.seed, cfg.trials, cfg.nmax, cfg.char, tuple(args.flip))
    config = cfg.as_dict()
    config["suite"] = args.suite
    if args.flip:
        config["flip"] = sorted(args.flip)
    return _emit(reports, args, cfg.seed, config)


def _oneshot_ring(args) -> tuple[PolyRing, RingDesc, IdealHandle | None]:
    ring = PolyRing(args.char or DEFAULT_CHARACTERISTIC, tuple(args.vars.replace(",", " ").split()))
    rels = ring.polys(*args.rel) if args.rel else ()
    R = RingDesc(ring, tuple(rels), "R")
    I = IdealHandle(ring, ring.polys(*args.gens)) if getattr(args, "gens", None) else None
    return ring, R, I


def cmd_oneshot(args) -> int:
    seed = args.seed if args.seed is not None else (_env_seed() or 0)
    ring, R, I = _oneshot_ring(args)
    kind = args.command

    def compute():
        if kind == "gb":
            if I is None:
                raise InputError("gb: no generators given")
            return (), None, {"basis": [str(g) for g in I.groebner_basis()]}
        if kind == "dim":
            return (), None, {"dim": krull_dim(R.ideal)}
        if kind == "depth":
            st = is_cohen_macaulay(R, seed=seed)
            return (), None, {"depth": st.depth, "dim": st.dim, "is_cm": int(st.is_cm)}
        if kind == "length":
            if I is None:
                raise InputError("length: no generators given")
            return (), length_zero_dim(R.ideal + I), {}
        ev = evector(R, I if I is not None else R.maximal_ideal, args.nmax)
        return ev.e, None, {"d": ev.d, "n0": ev.n0, "nmax": ev.N}

    inputs = {"ring": R} if I is None else {"ring": R, "I": I}
    rep = _info(kind, "R", inputs, seed, compute)
    for k, v in rep.evidence:
        if k == "basis":
            for g in v:
                print(g)
        else:
            print(f"{k} = {v}")
    if rep.e:
        print("e = (" + ", ".join(map(str, rep.e)) + ")")
    if rep.lam is not None:
        print(f"length = {rep.lam}")
    if args.json:
        write_report([rep], "json", args.json, seed, {"char": ring.p, "nmax": args.nmax})
    return exit_code([rep])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chern", description="Hilbert coefficient laboratory over prime fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, json=True):
        p.add_argument("--seed", type=int, default=None, help="run seed (default: $CHERN_SEED, then 0)")
        p.add_argument("--nmax", type=int, default=None, help="largest power sampled for the fit")
        p.add_argument("--char", type=int, default=None, help="prime characteristic")
        if json:
            p.add_argument("--json", metavar="OUT", default=None, help="write a JSON report")

    p = sub.add_parser("run", help="execute a script")
    p.add_argument("file")
    common(p)
    p.add_argument("--csv", metavar="OUT", default=None)
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("corpus", help="run a built-in suite")
    p.add_argument("--suite", choices=SUITES, default="paper")
    common(p)
    p.add_argument("--csv", metavar="OUT", default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--flip", action="append", default=[], metavar="ENTRY", help="negate an entry's CM flag")
    p.set_defaults(func=cmd_corpus)

    for name, text in (
        ("gb", "reduced Groebner basis of the generators"),
        ("dim", "Krull dimension of the ring"),
        ("depth", "depth of the ring at the origin"),
        ("length", "length of R/(generators)"),
        ("coeffs", "Hilbert-Samuel coefficients of the generators (default: maximal ideal)"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--vars", required=True, help="variable names, e.g. 'x y z'")
        p.add_argument("--rel", action="append", default=[], help="defining relation (repeatable)")
        common(p)
        p.add_argument("gens", nargs="*")
        p.set_defaults(func=cmd_oneshot)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except ChernError as exc:
        print(f"chern {args.command}: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
