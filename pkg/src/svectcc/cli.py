"""Command-line interface: ``svectcc <command> ...``.

All indices on the command line are 0-based. Objects are written as
comma-separated naturals (``2,1``); ``-`` or an empty string is the zero
object of dimension 0.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import serialize
from .bimorph import CompositionError, GaugeError, RankMatrix, compose1, perm_block
from .exactmat import DimensionError
from .harness import LAW_IDS, SampleGrid, SuiteConfig, exit_code, find_kv_counterexample, run_suite
from .serialize import ParseError
from .svect import functor_apply, nat_component
from .twomorph import hcompose, kv_hcompose, vcompose

EXIT_INPUT = 3


def parse_object(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "-"):
        return ()
    try:
        a = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"object {text!r}", "expected comma-separated natural numbers") from None
    if any(x < 0 for x in a):
        raise ParseError(f"object {text!r}", "entries must be natural numbers")
    return a


def parse_rank(text: str) -> RankMatrix:
    """``1,1;0,1;2,0`` -> 3x2 rank matrix (rows separated by ``;``)."""
    rows = [parse_object(r) for r in text.split(";")]
    if len({len(r) for r in rows}) != 1:
        raise ParseError(f"rank {text!r}", "rows have different lengths")
    return RankMatrix.from_rows(rows)


def _load(path: str, loader):
    return loader(serialize.load_json(path), path)


def _emit(obj) -> None:
    print(json.dumps(obj))


def _check_len(a, n, what):
    if len(a) != n:
        raise ParseError(what, f"object has {len(a)} slots, expected {n}")


# --------------------------------------------------------------------------
# commands


def cmd_compose1(args) -> int:
    F = _load(args.F, serialize.one_from_json)
    G = _load(args.G, serialize.one_from_json)
    GF = compose1(G, F)
    if args.at:
        points = [parse_object(p) for p in args.at]
        for a in points:
            _check_len(a, GF.src, f"--at {','.join(map(str, a))}")
    else:
        points = SampleGrid(cap=args.cap, extra_random=0).points(GF.src)
    evals = [
        {"i": i, "a": list(a), "mat": serialize.mat_to_json(GF.gauge.eval(i, a))}
        for a in points
        for i in range(GF.dst)
    ]
    _emit({"composite": serialize.one_to_json(GF), "evaluations": evals})
    return 0


def cmd_vcompose(args) -> int:
    T1 = _load(args.T1, serialize.two_from_json)
    T2 = _load(args.T2, serialize.two_from_json)
    _emit(serialize.two_to_json(vcompose(T2, T1)))
    return 0


def _horizontal(args, op) -> int:
    T = _load(args.T, serialize.two_from_json)
    S = _load(args.S, serialize.two_from_json)
    _emit(serialize.two_to_json(op(S, T)))
    return 0


def cmd_eval_functor(args) -> int:
    F = _load(args.F, serialize.one_from_json)
    f = _load(args.f, serialize.tuple_from_json)
    _emit(serialize.tuple_to_json(functor_apply(F, f)))
    return 0


def cmd_eval_nat(args) -> int:
    T = _load(args.T, serialize.two_from_json)
    a = parse_object(args.a)
    _check_len(a, T.n, f"object {args.a!r}")
    _emit({"a": list(a), "components": [serialize.mat_to_json(m) for m in nat_component(T, a)]})
    return 0


def cmd_gauge_eval(args) -> int:
    F = _load(args.F, serialize.one_from_json)
    a = parse_object(args.a)
    _check_len(a, F.src, f"object {args.a!r}")
    if not 0 <= args.i < F.dst:
        raise ParseError("i", f"component {args.i} out of range for {F.dst} components")
    _emit(serialize.mat_to_json(F.gauge.eval(args.i, a)))
    return 0


def cmd_perm_block(args) -> int:
    R = parse_rank(args.rank)
    Rk = parse_object(args.rk)
    a = parse_object(args.a)
    P = perm_block(Rk, R, a)
    _emit(serialize.mat_to_json(P))
    if args.plot:
        from .plotting import plot_matrix

        plot_matrix(P, args.plot, title=f"P(({args.rk}), [{args.rank}], ({args.a}))")
    return 0


def cmd_check(args) -> int:
    grid = SampleGrid(cap=args.cap, extra_random=args.extra_random, seed=args.seed)
    config = SuiteConfig(grid=grid, instances=args.instances, seed=args.seed, kv_budget=args.budget,
                         max_dim=args.max_dim, exhaustive=not args.quick)
    reports = run_suite(config, args.laws)
    for r in reports:
        print(r.line())
    if args.plot_dir:
        from .plotting import plot_reports

        out = Path(args.plot_dir)
        out.mkdir(parents=True, exist_ok=True)
        plot_reports(reports, out / "laws.png")
    return exit_code(reports)


def cmd_demo_kv(args) -> int:
    report = find_kv_counterexample(args.budget, args.seed)
    print(report.line())
    return exit_code([report])


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 3); exit 2 means an inconclusive search."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="svectcc", description="Exact computations in the 2-category 2SVect_cc.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compose1", help="compose two 1-morphisms and evaluate the composite gauge")
    c.add_argument("F", help="inner 1-morphism n -> m (JSON)")
    c.add_argument("G", help="outer 1-morphism m -> p (JSON)")
    c.add_argument("--at", action="append", metavar="A", help="evaluation point, e.g. 2,1 (repeatable)")
    c.add_argument("--cap", type=int, default=1, help="grid entry bound when --at is absent (default 1)")
    c.set_defaults(func=cmd_compose1)

    c = sub.add_parser("vcompose", help="vertical composite T2 . T1")
    c.add_argument("T1")
    c.add_argument("T2")
    c.set_defaults(func=cmd_vcompose)

    for name, op, text in (("hcompose", hcompose, "horizontal composite S o T"),
                           ("kv-hcompose", kv_hcompose, "horizontal composite without gauge factors")):
        c = sub.add_parser(name, help=text)
        c.add_argument("T", help="2-morphism between 1-morphisms n -> m")
        c.add_argument("S", help="2-morphism between 1-morphisms m -> p")
        c.set_defaults(func=lambda args, op=op: _horizontal(args, op))

    c = sub.add_parser("eval-functor", help="apply a 1-morphism to a morphism tuple")
    c.add_argument("F")
    c.add_argument("f")
    c.set_defaults(func=cmd_eval_functor)

    c = sub.add_parser("eval-nat", help="components of a 2-morphism at an object")
    c.add_argument("T")
    c.add_argument("a")
    c.set_defaults(func=cmd_eval_nat)

    c = sub.add_parser("gauge-eval", help="one gauge section s_i(a)")
    c.add_argument("F")
    c.add_argument("i", type=int)
    c.add_argument("a")
    c.set_defaults(func=cmd_gauge_eval)

    c = sub.add_parser("perm-block", help="the block permutation matrix P(Rk, R, a)")
    c.add_argument("--rk", required=True, help="row vector, e.g. 1,2,1")
    c.add_argument("--rank", required=True, help="rank matrix rows separated by ';', e.g. '1,1;0,1;2,0'")
    c.add_argument("--a", required=True, help="object, e.g. 2,1")
    c.add_argument("--plot", metavar="PNG", help="also render the matrix to this file")
    c.set_defaults(func=cmd_perm_block)

    c = sub.add_parser("check", help="run the law suite; one JSON report per line")
    c.add_argument("--cap", type=int, default=2)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--instances", type=int, default=20)
    c.add_argument("--extra-random", type=int, default=20)
    c.add_argument("--budget", type=int, default=1000, help="KV search budget")
    c.add_argument("--max-dim", type=int, default=3, help="largest object dimension in random instances")
    c.add_argument("--laws", nargs="+", choices=LAW_IDS, metavar="LAW")
    c.add_argument("--quick", action="store_true", help="shrink the exhaustive ranges")
    c.add_argument("--plot-dir", metavar="DIR", help="write laws.png to this directory")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("demo-kv", help="search for a KV associativity counterexample")
    c.add_argument("--budget", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_demo_kv)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except CompositionError as exc:
        print(f"composition error: {exc}", file=sys.stderr)
    except GaugeError as exc:
        print(f"gauge error: {exc}", file=sys.stderr)
    except (DimensionError, ValueError, IndexError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
