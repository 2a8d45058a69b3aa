"""Timing suites comparing the engines on families of growing instances.

Two suites cover the two scaling stories: "reduction" runs the brute
engine over interpretation models whose trace count doubles per atom,
and "fastpath" pits the brute scan against the reach-set engine on
XOR-chain instances where only the latter stays polynomial.
"""
from __future__ import annotations

import csv
import string
import time
from dataclasses import dataclass
from pathlib import Path

from .engine import DEFAULT_CAP, check_full, check_partial
from .fastpath import partial_compliant_fast
from .formula import And, Atom, Formula, Not, Or, State
from .obligations import Kind, Obligation, RuleSet
from .process import Seq, Task, TaskBlock, Xor, validate
from .reduction import build_interpretation_model

CSV_HEADER = ("instance", "engine", "n", "wall_ms", "traces", "verdict")

SUITES = ("reduction", "fastpath")


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    engine: str
    n: int
    wall_ms: float
    traces: int
    verdict: bool

    def row(self) -> tuple:
        return (self.instance, self.engine, self.n,
                f"{self.wall_ms:.3f}", self.traces,
                "true" if self.verdict else "false")


def _excluded_middle(n: int) -> Formula:
    """(a | !a) & (b | !b) & ... over n atoms: a tautology, so the full
    check cannot short-circuit and must visit all 2^n interpretations."""
    clauses = [Or(Atom(name), Not(Atom(name)))
               for name in string.ascii_lowercase[:n]]
    f = clauses[0]
    for clause in clauses[1:]:
        f = And(f, clause)
    return f


def _timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, (time.perf_counter() - start) * 1000.0


def _reduction_records(n_min: int, n_max: int) -> list[BenchRecord]:
    records = []
    for n in range(n_min, n_max + 1):
        instance = build_interpretation_model(_excluded_middle(n))
        cap = max(DEFAULT_CAP, 2 ** n + 1)
        report, ms = _timed(
            lambda: check_full(instance.model, instance.rules, cap=cap))
        records.append(BenchRecord(f"reduction-n{n}", "brute", n, ms,
                                   report.traces_examined, report.verdict))
    return records


def _xor_chain(n: int):
    """A trigger, n binary choices on an unrelated atom, then the
    deadline.  The requirement atom is never asserted, so the brute
    partial check must walk all 2^n runs before giving up."""
    blocks = [TaskBlock(Task("x1", State.of("a")))]
    for k in range(1, n + 1):
        blocks.append(Xor((TaskBlock(Task(f"p{k}", State.of("c"))),
                           TaskBlock(Task(f"q{k}", State.of("-c"))))))
    blocks.append(TaskBlock(Task("z", State.of("d"))))
    model = validate(Seq(tuple(blocks)), name=f"xor-chain-{n}")
    rule = Obligation(Kind.ACHIEVEMENT, Atom("b"),
                      trigger=Atom("a"), deadline=Atom("d"))
    return model, rule


def _fastpath_records(n_min: int, n_max: int) -> list[BenchRecord]:
    records = []
    for n in range(n_min, n_max + 1):
        model, rule = _xor_chain(n)
        cap = max(DEFAULT_CAP, 2 ** n + 1)
        report, brute_ms = _timed(
            lambda: check_partial(model, RuleSet((rule,)), cap=cap))
        records.append(BenchRecord(f"fastpath-n{n}", "brute", n, brute_ms,
                                   report.traces_examined, report.verdict))
        verdict, fast_ms = _timed(lambda: partial_compliant_fast(model, rule))
        records.append(BenchRecord(f"fastpath-n{n}", "fast", n, fast_ms,
                                   0, verdict))
    return records


def run_bench(suite: str, n_min: int, n_max: int,
              out: str | Path | None = None) -> list[BenchRecord]:
    """Run one suite over [n_min, n_max] and optionally write a CSV."""
    if suite == "reduction":
        records = _reduction_records(n_min, n_max)
    elif suite == "fastpath":
        records = _fastpath_records(n_min, n_max)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    if out is not None:
        write_csv(records, out)
    return records


def write_csv(records: list[BenchRecord], out: str | Path) -> None:
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record.row())
