"""Command-line interface.

Exit codes: 0 success, 1 usage or domain error, 2 verification failure
(NotGenerates, Unknown, a failing script step, a non-eligible system).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import io
from .closure import DEFAULT_BUDGET, Verdict, bell_number, closure, enumerate_all_partitions, \
    generates, member_of_closure
from .constructions import ConstructionError, build_for, eligible_system, extension_search
from .graph import LEMMAS, emit_graph
from .partition import Height2Type, PartitionError, TargetShape, canonical_target, classify_height2, \
    parse_prt
from .replay import LADDER_SCRIPTS, SPORADIC_SCRIPTS, ScriptError, run_script, script_for_quad, \
    script_sporadic, script_window
from .terms import TermError, derive_session_key, random_terms

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_members(path: str):
    """(n, partitions) from either a set file or a quad file."""
    text = _read(path)
    if io.is_quad_file(text):
        quad = io.read_quad(text)
        return quad.n, list(quad.members)
    return io.read_set(text)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _report_out(args, rep) -> None:
    if args.json:
        print(rep.to_json().rstrip("\n"))
    else:
        sys.stdout.write(rep.to_text())


# -- subcommands ----------------------------------------------------------------------


def cmd_construct(args) -> int:
    if args.alpha is not None:
        alpha = parse_prt(args.alpha, args.n)
    else:
        shape = TargetShape(args.shape)
        alpha = canonical_target(shape, args.n)
    if alpha.n >= 7 and classify_height2(alpha) is Height2Type.TWO_PLUS_TWO and args.seed is None:
        raise UsageError("construct: a type 2+2 target with n >= 7 needs --seed (randomised search)")
    quad = build_for(alpha, seed=args.seed if args.seed is not None else 1)
    _emit(io.write_quad(quad), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    text = _read(args.quad)
    if io.is_quad_file(text):
        quad = io.read_quad(text)
        members = quad.members
    elif args.mode == "closure":
        quad, (_, members) = None, io.read_set(text)
    else:
        raise UsageError("verify --mode script needs a quad file")
    if args.mode == "closure":
        rep = generates(members, budget=args.budget, jobs=args.jobs)
        _report_out(args, rep)
        return EXIT_OK if rep.verdict is Verdict.GENERATES else EXIT_FAIL
    script = script_for_quad(quad)
    rep = run_script(script)
    _report_out(args, rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_closure(args) -> int:
    n, parts = _read_members(args.set)
    store, rep = closure(parts, budget=args.budget, jobs=args.jobs)
    _report_out(args, rep)
    if args.elements:
        _emit(io.write_set(n, store), args.elements)
    if args.plot:
        from .plotting import plot_growth

        plot_growth(store, rep.trace, args.plot, title=f"closure on [{n}]")
    return EXIT_FAIL if rep.budget_hit else EXIT_OK


def cmd_member(args) -> int:
    n, parts = _read_members(args.set)
    p = parse_prt(args.p, n)
    res = member_of_closure(p, parts, budget=args.budget)
    word = {True: "true", False: "false", None: "unknown"}[res]
    if args.json:
        print(json.dumps({"partition": str(p), "member": res}))
    else:
        print(f"member: {word}")
    return EXIT_FAIL if res is None else EXIT_OK


def cmd_extensions(args) -> int:
    quad = io.read_quad(_read(args.quad))
    rep = extension_search(quad, args.m, mode=args.mode, budget=args.budget, jobs=args.jobs)
    if args.json:
        d = {k: v for k, v in vars(rep).items() if k not in ("witness", "first_index")}
        if rep.witness is not None:
            d["witness"] = [str(p) for p in rep.witness.members]
        print(json.dumps(d, indent=2))
    else:
        sys.stdout.write(rep.to_text())
    if args.out and rep.witness is not None:
        Path(args.out).write_text(io.write_quad(rep.witness))
    if not rep.complete:
        return EXIT_FAIL
    return EXIT_OK if rep.count > 0 else EXIT_FAIL


def cmd_eligible(args) -> int:
    quad = io.read_quad(_read(args.quad))
    rep = eligible_system(quad, args.u, args.v)
    if args.json:
        print(json.dumps({"u": rep.u, "v": rep.v, "checks": rep.checks(), "eligible": rep.eligible}, indent=2))
    else:
        sys.stdout.write(rep.to_text())
    return EXIT_OK if rep.eligible else EXIT_FAIL


def cmd_term(args) -> int:
    if args.action == "random":
        for name in ("k", "count", "depth", "seed"):
            if getattr(args, name) is None:
                raise UsageError(f"term random: --{name} is required")
        _emit(io.write_terms(random_terms(args.k, args.count, args.depth, args.seed)), args.out)
        return EXIT_OK
    if args.terms is None or args.tuple is None:
        raise UsageError(f"term {args.action}: TERMS and TUPLE files are required")
    tv = io.read_terms(_read(args.terms))
    _, values = io.read_tuple(_read(args.tuple))
    if args.action == "eval":
        _emit(io.format_partitions(tv.evaluate(values)), args.out)
    else:
        key = derive_session_key(tv, values)
        if args.hex:
            _emit(key.hex() + "\n", args.out)
        elif args.out:
            Path(args.out).write_bytes(key)
        else:
            sys.stdout.buffer.write(key + b"\n")
    return EXIT_OK


def cmd_graph(args) -> int:
    _emit(emit_graph(args.lemma, args.k), args.out)
    if args.figure:
        from .plotting import plot_ladder

        plot_ladder(args.lemma, args.k, args.figure)
    return EXIT_OK


def _script_by_id(sid: str, k: int | None):
    if sid in SPORADIC_SCRIPTS:
        return script_sporadic(sid)
    if k is None:
        raise UsageError(f"script {sid}: --k is required")
    if sid == "window":
        return script_window(k)
    if sid in LADDER_SCRIPTS:
        return LADDER_SCRIPTS[sid](k)
    raise UsageError(f"unknown script id {sid!r}")


def cmd_script(args) -> int:
    script = _script_by_id(args.id, args.k)
    if args.action == "dump":
        _emit(script.dump(), args.out)
        return EXIT_OK
    rep = run_script(script, witnesses=True if args.witnesses else None)
    _report_out(args, rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_bell(args) -> int:
    if args.enumerate:
        parts = enumerate_all_partitions(args.n)
        _emit(io.write_set(args.n, parts), args.out)
    else:
        print(bell_number(args.n))
    return EXIT_OK


def cmd_report(args) -> int:
    """Construction sweep: a TSV table plus figures in one directory."""
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for n in range(4, args.nmax + 1):
        for shape in TargetShape:
            t0 = time.perf_counter()
            quad = build_for(canonical_target(shape, n), seed=args.seed)
            rep = generates(quad.members, budget=args.budget, jobs=args.jobs)
            rows.append({
                "n": n,
                "shape": shape.value,
                "provenance": quad.provenance,
                "verdict": rep.verdict.value,
                "pair_ops": rep.pair_ops,
                "stored": rep.closure_size,
                "seconds": f"{time.perf_counter() - t0:.3f}",
            })
    with open(out / "sweep.tsv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), delimiter="\t", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)

    from .plotting import plot_growth, plot_ladder, plot_sweep

    plot_sweep(rows, out / "sweep.png")
    for lemma in LEMMAS:
        plot_ladder(lemma, args.k, out / f"ladder_{lemma}.png")
        (out / f"ladder_{lemma}.dot").write_text(emit_graph(lemma, args.k))
    from .constructions import quad_n6_atom

    store, crep = closure(quad_n6_atom().members)
    plot_growth(store, crep.trace, out / "closure_n6.png", title="full closure, sporadic n=6")
    sys.stdout.write(open(out / "sweep.tsv").read())
    failed = [r for r in rows if r["verdict"] != "Generates"]
    return EXIT_FAIL if failed else EXIT_OK


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="partlat", description="Four-element generating sets of partition lattices.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, json_flag=True, jobs=False, budget=False):
        if json_flag:
            sp.add_argument("--json", action="store_true", help="JSON report instead of key: value lines")
        if jobs:
            sp.add_argument("--jobs", type=int, default=1, help="worker threads/processes")
        if budget:
            sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="pair-operation budget")

    sp = sub.add_parser("construct", help="quad containing a height-1/2 partition")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--shape", choices=[s.value for s in TargetShape])
    g.add_argument("--alpha", help="target partition in prt syntax")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check that a quad (or any set file) generates Part(n)")
    sp.add_argument("quad")
    sp.add_argument("--mode", choices=["closure", "script"], default="closure")
    common(sp, jobs=True, budget=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("closure", help="full sublattice closure of a set")
    sp.add_argument("set")
    sp.add_argument("--elements", help="write the closure as a set file")
    sp.add_argument("--plot", help="write a growth figure (PNG)")
    common(sp, jobs=True, budget=True)
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("member", help="membership of a partition in [set]")
    sp.add_argument("set")
    sp.add_argument("--p", required=True)
    common(sp, budget=True)
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("extensions", help="generating extensions of a quad to [n+m]")
    sp.add_argument("quad")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--mode", choices=["find", "count"], default="find")
    sp.add_argument("--out", help="write the witness quad here")
    common(sp, jobs=True, budget=True)
    sp.set_defaults(func=cmd_extensions)

    sp = sub.add_parser("eligible", help="the five eligible-system equations")
    sp.add_argument("quad")
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_eligible)

    sp = sub.add_parser("term", help="lattice terms: eval, random, key")
    sp.add_argument("action", choices=["eval", "random", "key"])
    sp.add_argument("terms", nargs="?")
    sp.add_argument("tuple", nargs="?")
    sp.add_argument("--k", type=int)
    sp.add_argument("--count", type=int)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--hex", action="store_true", help="print the key as hex")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_term)

    sp = sub.add_parser("graph", help="DOT drawing of a construction")
    sp.add_argument("--lemma", required=True, choices=sorted(LEMMAS))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out")
    sp.add_argument("--figure", help="also render a PNG with matplotlib")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("script", help="dump or replay a proof script")
    sp.add_argument("action", choices=["dump", "run"])
    sp.add_argument("--id", required=True,
                    choices=sorted(LADDER_SCRIPTS) + ["window"] + list(SPORADIC_SCRIPTS))
    sp.add_argument("--k", type=int)
    sp.add_argument("--witnesses", action="store_true", help="evaluate every circle witness")
    sp.add_argument("--out")
    common(sp)
    sp.set_defaults(func=cmd_script)

    sp = sub.add_parser("bell", help="Bell number, or list all partitions")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bell)

    sp = sub.add_parser("report", help="construction sweep: TSV table and figures")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--nmax", type=int, default=9)
    sp.add_argument("--k", type=int, default=8, help="ladder size for the figures")
    sp.add_argument("--seed", type=int, required=True)
    common(sp, json_flag=False, jobs=True, budget=True)
    sp.set_defaults(func=cmd_report)
    return p


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except (PartitionError, TermError, ScriptError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
