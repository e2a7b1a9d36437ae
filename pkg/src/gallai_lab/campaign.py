"""Seeded verification campaigns and their JSON Lines findings.

Config file format: one ``key = value`` per line, ``#`` starts a comment,
blank lines ignored. Keys:

=================  ===========================================================
family             generator family, or ``all_connected`` (every connected
                   graph of each order up to isomorphism, order <= 8)
orders             ``8``, ``5-15`` or ``5,7,9``
instances          graphs per order for random families (default 1)
seed               64-bit base seed (default 0)
p                  edge probability for ``random_connected``, e.g. ``1/4``
legs, leg_length,  other integer generator parameters
leaves
checks             comma list from :data:`CHECKS`, or ``all``
path_cap           stored longest paths per graph (default 200000)
triple_cap         path triples examined per graph (default 50000)
node_budget        search nodes per graph before skipping (default 50000000)
workers            worker processes (env ``GALLAI_LAB_WORKERS`` overrides)
output             findings file (JSON Lines)
expected_open      checks whose violations are informational
timing             ``on`` records ``elapsed_micros``; ``off`` (default) writes 0
                   so output is byte-deterministic
=================  ===========================================================
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Iterator

from .errors import (
    FileUnreadable,
    Graph6Error,
    InvalidConfig,
    InvalidParams,
    OutputUnwritable,
    ParseError,
    SearchBudgetExceeded,
)
from .generators import FAMILIES, GeneratorSpec, connected_graphs, generate
from .graph import Graph, is_connected
from .graph6 import parse_graph6, to_graph6
from .intersect import (
    CheckVerdict,
    gallai_check,
    index_alignment_check,
    lemma2_check,
    pairwise_check,
    replay_witness,
    triple_check,
)
from .paths import enumerate_longest_paths
from .rng import derive_seed
from .surgery import interleave_surgery_check

SCHEMA_VERSION = 1
CHECKS = ("pairwise", "lemma2_vertex", "lemma2_edge", "alignment",
          "interleave_surgery", "triple", "gallai")
DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_PATH_CAP = 200_000
DEFAULT_TRIPLE_CAP = 50_000


@dataclass(frozen=True)
class CampaignConfig:
    family: str
    orders: tuple[int, ...]
    checks: tuple[str, ...]
    instance_count: int = 1
    seed: int = 0
    params: dict[str, int] = field(default_factory=dict)
    p: Fraction | None = None
    path_cap: int = DEFAULT_PATH_CAP
    triple_cap: int = DEFAULT_TRIPLE_CAP
    node_budget: int = DEFAULT_NODE_BUDGET
    workers: int = 1
    output: str | None = None
    expected_open: tuple[str, ...] = ()
    timing: bool = False

    def __post_init__(self) -> None:
        if not self.checks:
            raise InvalidConfig("checks must be nonempty")
        bad = [c for c in self.checks + self.expected_open if c not in CHECKS]
        if bad:
            raise InvalidConfig(f"unknown checks {bad}; expected from {list(CHECKS)}")
        if self.family not in FAMILIES + ("all_connected",):
            raise InvalidConfig(f"unknown family {self.family!r}")
        if self.instance_count < 1:
            raise InvalidConfig("instances must be >= 1")
        if min(self.path_cap, self.triple_cap, self.node_budget) < 1:
            raise InvalidConfig("caps must be >= 1")
        if self.workers < 1:
            raise InvalidConfig("workers must be >= 1")
        if self.family == "random_connected" and self.p is None:
            raise InvalidConfig("random_connected needs p")


@dataclass(frozen=True)
class Finding:
    graph6: str
    check: str
    holds: bool
    vacuous: bool
    witness: dict[str, Any] | None
    order_L: int
    longest_path_count: int
    elapsed_micros: int
    capped: bool = False
    source: str = ""
    info: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        record = {
            "schema": SCHEMA_VERSION,
            "graph6": self.graph6,
            "check": self.check,
            "holds": self.holds,
            "vacuous": self.vacuous,
            "capped": self.capped,
            "witness": self.witness,
            "order_L": self.order_L,
            "longest_path_count": self.longest_path_count,
            "elapsed_micros": self.elapsed_micros,
            "source": self.source,
            "info": self.info,
        }
        return json.dumps(record, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> Finding:
        d = json.loads(line)
        d.pop("schema", None)
        return cls(**d)


# -- config parsing ---------------------------------------------------------------

def _parse_orders(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = (int(x) for x in part.split("-", 1))
            if lo > hi:
                raise InvalidConfig(f"empty order range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise InvalidConfig("orders is empty")
    return tuple(out)


def _names(text: str) -> tuple[str, ...]:
    if text.strip() == "all":
        return CHECKS
    return tuple(x.strip() for x in text.split(",") if x.strip())


def parse_config(text: str) -> CampaignConfig:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in raw:
            raise InvalidConfig(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value

    def pop_int(key: str, default: int | None = None) -> int | None:
        if key not in raw:
            return default
        value = raw.pop(key)
        try:
            return int(value.replace("_", ""))
        except ValueError:
            raise InvalidConfig(f"{key} must be an integer, got {value!r}") from None

    try:
        family = raw.pop("family")
        checks = _names(raw.pop("checks"))
    except KeyError as exc:
        raise InvalidConfig(f"missing required key {exc.args[0]!r}") from None
    try:
        orders = _parse_orders(raw.pop("orders")) if "orders" in raw else ()
        p = Fraction(raw.pop("p")) if "p" in raw else None
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidConfig(str(exc)) from None
    output = raw.pop("output", None)
    expected_open = _names(raw.pop("expected_open", ""))
    timing = raw.pop("timing", "off").lower()
    if timing not in ("on", "off"):
        raise InvalidConfig("timing must be 'on' or 'off'")
    kwargs = dict(
        instance_count=pop_int("instances", 1),
        seed=pop_int("seed", 0),
        path_cap=pop_int("path_cap", DEFAULT_PATH_CAP),
        triple_cap=pop_int("triple_cap", DEFAULT_TRIPLE_CAP),
        node_budget=pop_int("node_budget", DEFAULT_NODE_BUDGET),
        workers=pop_int("workers", 1),
    )
    params = {key: pop_int(key) for key in list(raw)}
    if not orders and family != "spider":
        raise InvalidConfig("orders is required")
    return CampaignConfig(family=family, orders=orders, checks=checks, params=params, p=p,
                          output=output, expected_open=expected_open, timing=timing == "on",
                          **kwargs)


def load_config(path: str | os.PathLike) -> CampaignConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


# -- graph sources -------------------------------------------------------------------

def campaign_graphs(config: CampaignConfig) -> Iterator[tuple[str, Graph]]:
    """``(source label, graph)`` pairs in a fixed order."""
    fam = config.family
    if fam == "all_connected":
        for n in config.orders:
            for i, g in enumerate(connected_graphs(n)):
                yield f"all_connected/order={n}/#{i}", g
        return
    if fam == "spider":
        spec = GeneratorSpec("spider", config.params)
        yield f"spider/{config.params}", generate(spec)
        return
    random_family = fam in ("random_tree", "random_connected")
    for n in config.orders:
        params = {**config.params, "order": n}
        if fam == "random_connected":
            params.update(p_num=config.p.numerator, p_den=config.p.denominator)
        for i in range(config.instance_count if random_family else 1):
            seed = derive_seed(config.seed, n, i) if random_family else 0
            try:
                g = generate(GeneratorSpec(fam, params, seed))
            except InvalidParams as exc:
                raise InvalidConfig(str(exc)) from None
            yield f"{fam}/order={n}/#{i}/seed={seed}", g


# -- running checks ----------------------------------------------------------------

def run_check(name: str, g: Graph, report, triple_cap: int) -> CheckVerdict:
    if name == "pairwise":
        return pairwise_check(g, report)
    if name == "lemma2_vertex":
        return lemma2_check(g, "vertex_count", report)
    if name == "lemma2_edge":
        return lemma2_check(g, "edge_count", report)
    if name == "alignment":
        return index_alignment_check(g, report)
    if name == "interleave_surgery":
        return interleave_surgery_check(g, report, triple_cap)
    if name == "triple":
        return triple_check(g, triple_cap, report)
    if name == "gallai":
        return gallai_check(g, report)
    raise ValueError(f"unknown check {name!r}")


def check_graph(g: Graph, checks: Iterable[str], *, path_cap: int = DEFAULT_PATH_CAP,
                triple_cap: int = DEFAULT_TRIPLE_CAP, node_budget: int = DEFAULT_NODE_BUDGET,
                timing: bool = False, source: str = "") -> list[Finding]:
    """Run ``checks`` on one graph, enumerating its longest paths once."""
    checks = list(checks)
    g6 = to_graph6(g)
    clock = time.perf_counter_ns

    def skipped(reason: str, order_L: int = 0, count: int = 0) -> list[Finding]:
        return [Finding(g6, c, True, True, None, order_L, count, 0, source=source,
                        info={"skipped": reason}) for c in checks]

    if not is_connected(g):
        return skipped("disconnected")
    start = clock()
    try:
        report = enumerate_longest_paths(g, path_cap, node_budget=node_budget)
    except SearchBudgetExceeded:
        return skipped("node_budget")
    enum_ns = clock() - start
    if report.truncated:
        return skipped("path_cap", report.order_L, report.path_count)

    out = []
    for c in checks:
        start = clock()
        v = run_check(c, g, report, triple_cap)
        micros = (enum_ns + clock() - start) // 1000 if timing else 0
        out.append(Finding(g6, c, v.holds, v.vacuous, v.witness, report.order_L,
                           report.path_count, micros, capped=v.capped, source=source,
                           info=v.info))
    return out


def _check_task(args) -> list[Finding]:
    g6, source, checks, path_cap, triple_cap, node_budget, timing = args
    return check_graph(parse_graph6(g6), checks, path_cap=path_cap, triple_cap=triple_cap,
                       node_budget=node_budget, timing=timing, source=source)


def resolve_workers(configured: int) -> int:
    env = os.environ.get("GALLAI_LAB_WORKERS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise InvalidConfig(f"GALLAI_LAB_WORKERS must be an integer, got {env!r}") from None
        if value < 1:
            raise InvalidConfig("GALLAI_LAB_WORKERS must be >= 1")
        return value
    return configured


def _tasks(items, config_like) -> Iterator[tuple]:
    checks, path_cap, triple_cap, node_budget, timing = config_like
    for source, g in items:
        yield (to_graph6(g), source, tuple(checks), path_cap, triple_cap, node_budget, timing)


def _execute(tasks: Iterable[tuple], workers: int) -> Iterator[Finding]:
    if workers == 1:
        for t in tasks:
            yield from _check_task(t)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for findings in pool.map(_check_task, tasks, chunksize=4):
            yield from findings


@dataclass
class Summary:
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    expected_open: tuple[str, ...] = ()

    def add(self, f: Finding) -> None:
        row = self.counts.setdefault(f.check, {"findings": 0, "holds": 0, "violations": 0,
                                               "vacuous": 0, "capped": 0})
        row["findings"] += 1
        row["holds" if f.holds else "violations"] += 1
        row["vacuous"] += f.vacuous
        row["capped"] += f.capped

    @property
    def blocking_violations(self) -> int:
        return sum(row["violations"] for check, row in self.counts.items()
                   if check not in self.expected_open)

    @property
    def exit_code(self) -> int:
        return 1 if self.blocking_violations else 0

    def to_json(self) -> dict[str, Any]:
        return {"checks": self.counts, "expected_open": list(self.expected_open),
                "blocking_violations": self.blocking_violations}


class _Sink:
    def __init__(self, output: str | os.PathLike | None):
        self.handle = None
        if output is not None:
            try:
                Path(output).parent.mkdir(parents=True, exist_ok=True)
                self.handle = open(output, "w", encoding="utf-8")
            except OSError as exc:
                raise OutputUnwritable(f"cannot write findings to {output}: {exc}") from None

    def write(self, f: Finding) -> None:
        if self.handle is not None:
            self.handle.write(f.to_json() + "\n")

    def close(self) -> None:
        if self.handle is not None:
            self.handle.close()


def _drive(findings: Iterator[Finding], output, expected_open) -> tuple[list[Finding], Summary]:
    summary = Summary(expected_open=tuple(expected_open))
    sink = _Sink(output)
    collected = []
    try:
        for f in findings:
            sink.write(f)
            summary.add(f)
            collected.append(f)
    finally:
        sink.close()
    return collected, summary


def run_campaign(config: CampaignConfig, output: str | os.PathLike | None = None
                 ) -> tuple[list[Finding], Summary]:
    """Run every configured check on every configured graph.

    With one worker the findings (and the file) are a pure function of the
    config; with more, the same findings arrive in the same order as well.
    """
    workers = resolve_workers(config.workers)
    tasks = _tasks(campaign_graphs(config),
                   (config.checks, config.path_cap, config.triple_cap, config.node_budget,
                    config.timing))
    return _drive(_execute(tasks, workers), output or config.output, config.expected_open)


def read_graph6_file(path: str | os.PathLike) -> list[tuple[int, Graph]]:
    try:
        lines = Path(path).read_text(encoding="ascii", errors="replace").splitlines()
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc}") from None
    graphs = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            graphs.append((lineno, parse_graph6(line.strip())))
        except Graph6Error as exc:
            raise ParseError(lineno, str(exc)) from None
    return graphs


def verify_file(path: str | os.PathLike, checks: Iterable[str], *, output=None,
                path_cap: int = DEFAULT_PATH_CAP, triple_cap: int = DEFAULT_TRIPLE_CAP,
                node_budget: int = DEFAULT_NODE_BUDGET, workers: int = 1,
                expected_open: Iterable[str] = (), timing: bool = False
                ) -> tuple[list[Finding], Summary]:
    checks = tuple(checks)
    bad = [c for c in checks if c not in CHECKS]
    if bad or not checks:
        raise InvalidConfig(f"unknown or missing checks {bad}; expected from {list(CHECKS)}")
    items = [(f"{Path(path).name}:{lineno}", g) for lineno, g in read_graph6_file(path)]
    tasks = _tasks(items, (checks, path_cap, triple_cap, node_budget, timing))
    return _drive(_execute(tasks, resolve_workers(workers)), output, expected_open)


def replay_finding(f: Finding) -> bool:
    """True iff re-running the finding's check on its graph gives the same verdict.

    Violations are additionally replayed from the witness alone.
    """
    g = parse_graph6(f.graph6)
    if f.vacuous and "skipped" in f.info:
        return True
    (fresh,) = check_graph(g, [f.check])
    if fresh.holds != f.holds:
        return False
    if not f.holds:
        return replay_witness(g, f.check, f.witness)
    return True
