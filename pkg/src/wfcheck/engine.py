"""Brute-force compliance checking over the enumerated trace space.

Three questions are asked of a model and a rule set: do all traces comply
(full), does some trace comply (partial), does no trace comply (non).  The
brute engine enumerates traces in the deterministic net order and
short-circuits on the first witness, so verdict, witness and the examined
count are reproducible run to run.

With jobs > 1 the trace stream is scanned in fixed-size chunks handed to a
worker pool; chunk results are consumed in stream order and the first
matching chunk decides, so the report is identical to the single-worker
one.  The examined count always means: the position of the witness in the
deterministic order (or the whole space when there is none).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import islice

from .formula import State
from .net import DEFAULT_CAP, Trace, derive_trace, enumerate_executions
from .obligations import RuleSet, SatCache, eval_obligation
from .process import Model

CHUNK = 64


@dataclass(frozen=True)
class Witness:
    """A reported trace: task ids plus the state after each step."""

    execution: tuple[str, ...]
    states: tuple[State, ...]

    @classmethod
    def from_trace(cls, trace: Trace) -> "Witness":
        return cls(trace.task_ids(), trace.states())


@dataclass(frozen=True)
class ComplianceReport:
    mode: str
    verdict: bool
    witness: Witness | None
    traces_examined: int
    engine: str = "brute"


def trace_complies(tr: Trace, rs: RuleSet, strict_deadline: bool = False,
                   cache: SatCache | None = None) -> bool:
    """A trace complies when every obligation in the set is satisfied."""
    cache = cache or SatCache()
    return all(eval_obligation(tr, o, strict_deadline, cache).satisfied
               for o in rs.obligations)


def _scan(model: Model, rules: RuleSet, want: bool, jobs: int, cap: int,
          strict_deadline: bool) -> tuple[Trace | None, int]:
    """First trace whose compliance equals want, plus the examined count."""
    cache = SatCache()
    traces = (derive_trace(model, e)
              for e in enumerate_executions(model, cap))
    found: Trace | None = None
    examined = 0
    if jobs <= 1:
        for trace in traces:
            examined += 1
            if trace_complies(trace, rules, strict_deadline, cache) == want:
                return trace, examined
        return None, examined

    def probe(chunk: list[Trace]) -> int | None:
        local = SatCache()
        for k, trace in enumerate(chunk):
            if trace_complies(trace, rules, strict_deadline, local) == want:
                return k
        return None

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        pending = []
        exhausted = False
        while not exhausted or pending:
            while not exhausted and len(pending) < jobs * 2:
                chunk = list(islice(traces, CHUNK))
                if not chunk:
                    exhausted = True
                    break
                pending.append((chunk, pool.submit(probe, chunk)))
            if not pending:
                break
            chunk, future = pending.pop(0)
            hit = future.result()
            if hit is not None:
                return chunk[hit], examined + hit + 1
            examined += len(chunk)
    return None, examined


def check_full(model: Model, rules: RuleSet, jobs: int = 1,
               cap: int = DEFAULT_CAP,
               strict_deadline: bool = False) -> ComplianceReport:
    """Every trace complies; a violating trace is reported otherwise."""
    violator, examined = _scan(model, rules, False, jobs, cap,
                               strict_deadline)
    return ComplianceReport(
        mode="full",
        verdict=violator is None,
        witness=None if violator is None else Witness.from_trace(violator),
        traces_examined=examined)


def check_partial(model: Model, rules: RuleSet, jobs: int = 1,
                  cap: int = DEFAULT_CAP,
                  strict_deadline: bool = False) -> ComplianceReport:
    """Some trace complies; the first such trace is the witness."""
    complier, examined = _scan(model, rules, True, jobs, cap,
                               strict_deadline)
    return ComplianceReport(
        mode="partial",
        verdict=complier is not None,
        witness=None if complier is None else Witness.from_trace(complier),
        traces_examined=examined)


def check_non(model: Model, rules: RuleSet, jobs: int = 1,
              cap: int = DEFAULT_CAP,
              strict_deadline: bool = False) -> ComplianceReport:
    """No trace complies; a complying trace refutes this."""
    partial = check_partial(model, rules, jobs, cap, strict_deadline)
    return ComplianceReport(
        mode="non",
        verdict=not partial.verdict,
        witness=partial.witness,
        traces_examined=partial.traces_examined)


def run_check(model: Model, rules: RuleSet, mode: str, engine: str = "brute",
              jobs: int = 1, cap: int = DEFAULT_CAP,
              strict_deadline: bool = False) -> ComplianceReport:
    """Dispatch a mode/engine pair; the fast engine needs a 1L- rule set."""
    if mode not in ("full", "partial", "non"):
        raise ValueError(f"unknown mode {mode!r}")
    if engine == "brute":
        checker = {"full": check_full, "partial": check_partial,
                   "non": check_non}[mode]
        return checker(model, rules, jobs, cap, strict_deadline)
    if engine != "fast":
        raise ValueError(f"unknown engine {engine!r}")
    from .fastpath import (full_compliant_fast, partial_compliant_fast,
                           require_single_local_literal)
    obligation = require_single_local_literal(rules)
    if mode == "full":
        verdict = full_compliant_fast(model, obligation, and_cap=cap)
    else:
        verdict = partial_compliant_fast(model, obligation, and_cap=cap)
        if mode == "non":
            verdict = not verdict
    return ComplianceReport(mode=mode, verdict=verdict, witness=None,
                            traces_examined=0, engine="fast")
