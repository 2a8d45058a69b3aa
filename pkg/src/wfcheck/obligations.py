"""Achievement and maintenance rules evaluated over traces.

An obligation carries a requirement, and either applies globally (no
trigger, no deadline: the whole trace is one in-force interval) or locally:
every step whose task annotation satisfies the trigger opens an in-force
interval there.  Requirement and deadline are judged against the states the
trace accumulates; the last state of a trace counts as a deadline state no
matter what it contains, so no interval is left dangling.

Anchoring local intervals at the annotations that assert the trigger (and
not at every later state the trigger literal happens to persist into) is
what makes per-trigger analysis compose; the restricted evaluation below
relies on it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .formula import Formula, State, eval_formula, is_literal
from .net import Trace
from .process import Task


class NotLocal(ValueError):
    """A per-trigger operation was asked about a global obligation."""


class NotNested(ValueError):
    """overlap_reduction needs one interval properly inside the other."""


@dataclass(frozen=True)
class SatCache:
    """Memo for formula-over-state checks; one engine run shares one."""

    memo: dict = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.memo is None:
            object.__setattr__(self, "memo", {})

    def holds(self, f: Formula, s: State) -> bool:
        key = (f, s)
        try:
            return self.memo[key]
        except KeyError:
            value = eval_formula(f, s)
            self.memo[key] = value
            return value


class Kind(enum.Enum):
    ACHIEVEMENT = "achievement"
    MAINTENANCE = "maintenance"


@dataclass(frozen=True)
class Obligation:
    kind: Kind
    requirement: Formula
    trigger: Formula | None = None
    deadline: Formula | None = None

    def __post_init__(self):
        if (self.trigger is None) != (self.deadline is None):
            raise ValueError(
                "trigger and deadline must be both given or both omitted")

    @property
    def is_global(self) -> bool:
        return self.trigger is None

    def literal_fields(self) -> bool:
        if not is_literal(self.requirement):
            return False
        if self.is_global:
            return True
        return is_literal(self.trigger) and is_literal(self.deadline)


@dataclass(frozen=True)
class RuleSet:
    obligations: tuple[Obligation, ...]

    def __post_init__(self):
        if not self.obligations:
            raise ValueError("a rule set needs at least one obligation")


@dataclass(frozen=True)
class InForceInterval:
    start_index: int
    end_index: int
    satisfied: bool


@dataclass(frozen=True)
class ObligationResult:
    satisfied: bool
    violating: InForceInterval | None = None


def _interval_at(states: tuple[State, ...], o: Obligation, i: int,
                 cache: SatCache) -> InForceInterval:
    last = len(states) - 1
    j_delta = next((j for j in range(i, last + 1)
                    if cache.holds(o.deadline, states[j])), last)
    if o.kind is Kind.MAINTENANCE:
        ok = all(cache.holds(o.requirement, states[k])
                 for k in range(i, j_delta + 1))
        return InForceInterval(i, j_delta, ok)
    j_rho = next((j for j in range(i, last + 1)
                  if cache.holds(o.requirement, states[j])), None)
    if j_rho is not None and j_rho <= j_delta:
        return InForceInterval(i, j_rho, True)
    return InForceInterval(i, j_delta, False)


def _global_interval(states: tuple[State, ...], o: Obligation,
                     cache: SatCache) -> InForceInterval:
    if o.kind is Kind.MAINTENANCE:
        ok = all(cache.holds(o.requirement, s) for s in states)
    else:
        ok = any(cache.holds(o.requirement, s) for s in states)
    return InForceInterval(0, len(states) - 1, ok)


def trigger_indices(tr: Trace, o: Obligation,
                    cache: SatCache | None = None) -> list[int]:
    """Steps whose task annotation satisfies the trigger."""
    if o.is_global:
        raise NotLocal("a global obligation has no trigger")
    cache = cache or SatCache()
    return [i for i, (task, _) in enumerate(tr.steps)
            if cache.holds(o.trigger, task.annotation)]


def in_force_intervals(tr: Trace, o: Obligation,
                       cache: SatCache | None = None) -> list[InForceInterval]:
    """Every in-force interval of o on this trace, with its outcome."""
    cache = cache or SatCache()
    states = tr.states()
    if o.is_global:
        return [_global_interval(states, o, cache)]
    return [_interval_at(states, o, i, cache)
            for i in trigger_indices(tr, o, cache)]


def eval_obligation(tr: Trace, o: Obligation, strict_deadline: bool = False,
                    cache: SatCache | None = None) -> ObligationResult:
    """Check one obligation on one trace.

    With no trigger step the verdict is vacuously satisfied.  The default
    achievement reading only counts deadline states from the trigger on;
    strict_deadline also lets deadline states before the trigger spoil it.
    """
    cache = cache or SatCache()
    intervals = in_force_intervals(tr, o, cache)
    if (strict_deadline and o.kind is Kind.ACHIEVEMENT
            and not o.is_global):
        states = tr.states()
        first_delta = next((j for j, s in enumerate(states)
                            if cache.holds(o.deadline, s)), None)
        checked = []
        for iv in intervals:
            j_rho = next((j for j in range(iv.start_index, len(states))
                          if cache.holds(o.requirement, states[j])), None)
            ok = j_rho is not None and (first_delta is None
                                        or j_rho <= first_delta)
            checked.append(InForceInterval(iv.start_index, iv.end_index, ok))
        intervals = checked
    for iv in intervals:
        if not iv.satisfied:
            return ObligationResult(False, iv)
    return ObligationResult(True)


def eval_restricted(tr: Trace, o: Obligation, allowed) -> bool:
    """Check only the in-force intervals opened by the allowed tasks."""
    if o.is_global:
        raise NotLocal("restricted evaluation needs a local obligation")
    cache = SatCache()
    allowed_ids = {t.id if isinstance(t, Task) else t for t in allowed}
    for task, _ in tr.steps:
        if task.id in allowed_ids and not cache.holds(
                o.trigger, task.annotation):
            raise ValueError(
                f"task {task.id!r} does not satisfy the trigger")
    states = tr.states()
    for i in trigger_indices(tr, o, cache):
        if tr.steps[i][0].id not in allowed_ids:
            continue
        if not _interval_at(states, o, i, cache).satisfied:
            return False
    return True


def overlap_reduction(i1: InForceInterval, i2: InForceInterval,
                      kind: Kind) -> InForceInterval:
    """Pick the interval whose outcome decides a nested pair (i2 inside i1).

    For achievement the inner interval decides; for maintenance the outer
    one does.
    """
    nested = (i1.start_index <= i2.start_index
              and i2.end_index <= i1.end_index
              and (i1.start_index, i1.end_index)
              != (i2.start_index, i2.end_index))
    if not nested:
        raise NotNested(f"{i2} is not nested inside {i1}")
    return i2 if kind is Kind.ACHIEVEMENT else i1


@dataclass(frozen=True)
class VariantTag:
    single: bool
    global_scope: bool
    literal_only: bool

    def __str__(self):
        return (("1" if self.single else "n")
                + ("G" if self.global_scope else "L")
                + ("-" if self.literal_only else "+"))


def classify_variant(rs: RuleSet) -> VariantTag:
    """Obligation count 1/n, scope G/L, fields literal-only or not."""
    return VariantTag(
        single=len(rs.obligations) == 1,
        global_scope=all(o.is_global for o in rs.obligations),
        literal_only=all(o.literal_fields() for o in rs.obligations),
    )
