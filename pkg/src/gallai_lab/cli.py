"""Command line: ``gallai-lab {campaign,verify,inspect,gen}``.

Exit codes: 0 every check holds (vacuous counts as holding), 1 at least one
violation outside ``--expected-open``, 2 usage, parse or runtime error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import campaign as cp
from .dot import to_dot
from .errors import DisconnectedGraph, GallaiLabError
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import is_connected
from .graph6 import parse_graph6, to_graph6
from .intersect import gallai_set
from .paths import KERNEL, enumerate_longest_paths


def _checks(text: str) -> tuple[str, ...]:
    names = cp._names(text)
    bad = [c for c in names if c not in cp.CHECKS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown checks {bad}; choose from {', '.join(cp.CHECKS)} or 'all'")
    return names


def _param(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("expected KEY=VALUE")
    return key.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gallai-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("campaign", help="run a seeded campaign from a config file")
    c.add_argument("--config", required=True)
    c.add_argument("--output", help="findings file (overrides config 'output')")
    c.add_argument("--expected-open", type=_checks, default=(),
                   help="checks whose violations do not fail the run")

    v = sub.add_parser("verify", help="check every graph in a graph6 file")
    v.add_argument("file")
    v.add_argument("--checks", type=_checks, required=True)
    v.add_argument("--output", help="findings file; default stdout")
    v.add_argument("--path-cap", type=int, default=cp.DEFAULT_PATH_CAP)
    v.add_argument("--triple-cap", type=int, default=cp.DEFAULT_TRIPLE_CAP)
    v.add_argument("--node-budget", type=int, default=cp.DEFAULT_NODE_BUDGET)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--expected-open", type=_checks, default=())

    i = sub.add_parser("inspect", help="describe one graph given as graph6")
    i.add_argument("graph6")
    i.add_argument("--dot", metavar="FILE", help="write DOT with up to 3 longest paths")
    i.add_argument("--checks", type=_checks, default=cp.CHECKS)
    i.add_argument("--path-cap", type=int, default=cp.DEFAULT_PATH_CAP)

    g = sub.add_parser("gen", help="print the graph6 line of a generated graph")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--order", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--param", type=_param, action="append", default=[],
                   help="extra generator parameter, e.g. legs=3 or p=1/4")
    return parser


def _cmd_campaign(args) -> int:
    config = cp.load_config(args.config)
    if args.expected_open:
        config = cp.CampaignConfig(**{**config.__dict__, "expected_open": args.expected_open})
    output = args.output or config.output
    _, summary = cp.run_campaign(config, output)
    print(json.dumps(summary.to_json(), indent=2, sort_keys=True))
    return summary.exit_code


def _cmd_verify(args) -> int:
    findings, summary = cp.verify_file(
        args.file, args.checks, output=args.output, path_cap=args.path_cap,
        triple_cap=args.triple_cap, node_budget=args.node_budget, workers=args.workers,
        expected_open=args.expected_open)
    if args.output is None:
        for f in findings:
            print(f.to_json())
    print(json.dumps(summary.to_json(), sort_keys=True), file=sys.stderr)
    return summary.exit_code


def _cmd_inspect(args) -> int:
    g = parse_graph6(args.graph6.strip())
    if not is_connected(g):
        raise DisconnectedGraph("inspect needs a connected graph")
    report = enumerate_longest_paths(g, args.path_cap)
    print(f"graph6:            {to_graph6(g)}")
    print(f"order / edges:     {g.order} / {g.size}")
    print(f"order_L:           {report.order_L}")
    print(f"longest paths:     {report.path_count}"
          + (" (list truncated)" if report.truncated else ""))
    print(f"search nodes:      {report.explored_nodes} ({KERNEL} kernel)")
    if not report.truncated:
        print(f"gallai set:        {sorted(gallai_set(report))}")
    for p in report.paths[:10]:
        print(f"  {list(p)}")
    if len(report.paths) > 10:
        print(f"  ... {len(report.paths) - 10} more")
    violations = 0
    for f in cp.check_graph(g, args.checks, path_cap=args.path_cap):
        status = "vacuous" if f.vacuous else ("holds" if f.holds else "VIOLATED")
        extra = f" {json.dumps(f.witness, sort_keys=True)}" if f.witness else ""
        print(f"check {f.check:<19} {status}{' (capped)' if f.capped else ''}{extra}")
        violations += not f.holds
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(g, report.paths[:3]))
    return 1 if violations else 0


def _cmd_gen(args) -> int:
    params: dict[str, int] = {}
    for key, value in args.param:
        if key == "p":
            p = Fraction(value)
            params.update(p_num=p.numerator, p_den=p.denominator)
        else:
            params[key] = int(value)
    if args.order is not None:
        params["order"] = args.order
    print(to_graph6(generate(GeneratorSpec(args.family, params, args.seed))))
    return 0


COMMANDS = {"campaign": _cmd_campaign, "verify": _cmd_verify,
            "inspect": _cmd_inspect, "gen": _cmd_gen}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return COMMANDS[args.command](args)
    except (GallaiLabError, ValueError, OSError) as exc:
        print(f"gallai-lab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
