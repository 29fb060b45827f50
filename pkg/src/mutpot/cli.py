"""Command-line interface.

Subcommands write line-delimited `record=<type> key=value ...` lines to
stdout; free-text values (expressions, node keys) are double-quoted.  Exit
codes: 0 success (or a true verdict), 1 a false verdict or a failing
verification suite, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from .exprparse import parse_expression
from .orbit import explore, to_dot
from .seedfile import load_seed, render_seed
from .upperbound import check_property_V, generators_for, ub_member
from .verify import SUITE_NAMES, run_suite

__all__ = ["main", "app", "build_parser"]


def _fmt_vec(v):
    return "(" + ",".join(str(x) for x in v) + ")"


def _fmt_bool(b):
    return "true" if b else "false"


def _parse_direction(text):
    stripped = text.strip()
    if stripped.startswith("(") and stripped.endswith(")"):
        stripped = stripped[1:-1]
    try:
        parts = tuple(int(p) for p in stripped.split(","))
    except ValueError:
        raise ValueError(
            f"bad direction {text!r}; expected e.g. '0,1' or '(0,1)'"
        ) from None
    if not parts:
        raise ValueError("empty direction")
    return parts


def _print_membership(report):
    print(
        f"record=summary verdict={_fmt_bool(report.verdict)} "
        f"laurent={_fmt_bool(report.w_is_laurent)}"
    )
    if report.not_laurent_factor is not None:
        w = report.not_laurent_factor
        print(
            f"record=witness direction={_fmt_vec(w.direction)} power={w.power}"
        )
    for r in report.directions:
        line = (
            f"record=direction direction={_fmt_vec(r.direction)} "
            f"multiplicity={r.multiplicity} ok={_fmt_bool(r.ok)}"
        )
        if r.failure is not None:
            line += (
                f" level={r.failure.level} required_power={r.failure.required_power}"
                f' remainder="{r.failure.remainder.to_string()}"'
            )
        print(line)


def _cmd_mutate(args):
    seed = load_seed(args.seed)
    direction = _parse_direction(args.dir)
    mutated = seed.mutate(direction, times=args.times)
    sys.stdout.write(render_seed(mutated))
    return 0


def _cmd_check_v(args):
    seed = load_seed(args.seed)
    report = check_property_V(seed.potential, seed.form, seed.collection)
    _print_membership(report)
    return 0 if report.verdict else 1


def _cmd_ub_member(args):
    seed = load_seed(args.seed)
    expr = parse_expression(args.expr, seed.rank)
    report = ub_member(expr, seed.form, seed.collection)
    _print_membership(report)
    return 0 if report.verdict else 1


def _cmd_generators(args):
    seed = load_seed(args.seed)
    pres = generators_for(seed.form, seed.collection)
    print(f"record=summary shape={pres.shape} count={len(pres.generators)}")
    for label, gen in zip(pres.labels, pres.generators):
        print(f'record=generator label={label} generator="{gen.to_string()}"')
    return 0


def _cmd_orbit(args):
    seed = load_seed(args.seed)
    graph = explore(seed, args.depth, include_potential=args.include_potential)
    for node in graph.nodes:
        print(f'record=node key="{node.key}" depth={node.depth}')
    for edge in graph.edges:
        print(
            f'record=edge source="{edge.source}" direction={_fmt_vec(edge.direction)}'
            f' target="{edge.target}"'
        )
    print(
        f"record=summary nodes={len(graph.nodes)} edges={len(graph.edges)} "
        f"truncated={_fmt_bool(graph.truncated)}"
    )
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(graph))
    return 0


def _cmd_verify(args):
    results = run_suite(args.suite, cases=args.cases, rng_seed=args.rng_seed)
    total = passed = 0
    for r in results:
        print(f"record=suite name={r.name} passed={r.passed} total={r.total}")
        for detail in r.failures[:10]:
            print(f'record=failure suite={r.name} detail="{detail}"')
        total += r.total
        passed += r.passed
    print(f"{passed}/{total} passed")
    return 0 if passed == total else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mutpot",
        description="Mutations of potentials on lattices: compute and verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutate", help="mutate a seed and print the new document")
    p.add_argument("--seed", required=True, help="path to a seed file")
    p.add_argument("--dir", required=True, help="mutation direction, e.g. '0,1'")
    p.add_argument("--times", type=int, default=1, help="number of mutations")
    p.set_defaults(handler=_cmd_mutate)

    p = sub.add_parser("check-v", help="membership test for a seed's potential")
    p.add_argument("--seed", required=True)
    p.set_defaults(handler=_cmd_check_v)

    p = sub.add_parser("ub-member", help="membership test for an expression")
    p.add_argument("--seed", required=True)
    p.add_argument("--expr", required=True, help="expression over x1..xr")
    p.set_defaults(handler=_cmd_ub_member)

    p = sub.add_parser("generators", help="print the membership-ring generators")
    p.add_argument("--seed", required=True)
    p.set_defaults(handler=_cmd_generators)

    p = sub.add_parser("orbit", help="breadth-first mutation graph of a seed")
    p.add_argument("--seed", required=True)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--dot", help="also write the graph as DOT to this path")
    p.add_argument("--include-potential", action="store_true")
    p.set_defaults(handler=_cmd_orbit)

    p = sub.add_parser("verify", help="run the self-verification suites")
    p.add_argument("--suite", choices=SUITE_NAMES, default="all")
    p.add_argument("--cases", type=int, default=None, help="override suite size")
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def app():
    raise SystemExit(main())
