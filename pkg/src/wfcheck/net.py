"""Workflow-net semantics for validated models.

Compilation is structural: tasks become transitions between two places, seq
children share intermediate places, xor branches share their entry and exit
places, and each and-block gets a silent fork and join pair.  Silent
transitions carry empty annotations and are dropped from reported runs, so
a reported execution lists exactly the model's tasks in firing order.

Enumeration walks the net depth-first.  At each point the branching is over
the tasks that can fire next once the forced silent transitions in front of
them are flushed; this yields every distinct task-level run exactly once,
with one canonical placement of the silent steps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count as _count
from typing import Iterator

from .formula import EMPTY_STATE, State, update
from .process import (AndBlock, Model, ProcessBlock, Seq, Task, TaskBlock,
                      Xor, count_executions)

SOURCE_PLACE = "i"
SINK_PLACE = "o"

DEFAULT_CAP = 2 ** 20


class NotEnabled(ValueError):
    """fire() was asked to fire a transition lacking an input token."""


class ExecutionCapExceeded(RuntimeError):
    """The model admits more runs than the caller's cap allows."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} executions exceed the cap of {cap}")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class Marking:
    """Token counts per place; zero entries are dropped so equality is sane."""

    counts: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, mapping: dict[str, int]) -> "Marking":
        return cls(tuple(sorted(
            (p, c) for p, c in mapping.items() if c != 0)))

    def count(self, place: str) -> int:
        for p, c in self.counts:
            if p == place:
                return c
        return 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.counts)

    def total(self) -> int:
        return sum(c for _, c in self.counts)


@dataclass
class WFNet:
    places: tuple[str, ...]
    transitions: dict[str, Task]
    pre: dict[str, tuple[str, ...]]
    post: dict[str, tuple[str, ...]]
    silent_ids: frozenset[str]
    source: str = SOURCE_PLACE
    sink: str = SINK_PLACE
    producers: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def initial_marking(self) -> Marking:
        return Marking.of({self.source: 1})

    def visible_ids(self) -> list[str]:
        return sorted(t for t in self.transitions if t not in self.silent_ids)


@dataclass(frozen=True)
class Execution:
    """One complete run: the model's tasks in firing order.

    ``firing`` is the full transition sequence including the silent fork and
    join steps, kept for replay; ``steps`` is what the run looks like at the
    task level and is what states are derived from.
    """

    steps: tuple[Task, ...]
    firing: tuple[str, ...]

    def task_ids(self) -> tuple[str, ...]:
        return tuple(t.id for t in self.steps)


@dataclass(frozen=True)
class Trace:
    """An execution paired with the state reached after each step."""

    steps: tuple[tuple[Task, State], ...]

    @classmethod
    def from_tasks(cls, tasks) -> "Trace":
        state = EMPTY_STATE
        steps = []
        for task in tasks:
            state = update(state, task.annotation)
            steps.append((task, state))
        return cls(tuple(steps))

    def states(self) -> tuple[State, ...]:
        return tuple(s for _, s in self.steps)

    def tasks(self) -> tuple[Task, ...]:
        return tuple(t for t, _ in self.steps)

    def task_ids(self) -> tuple[str, ...]:
        return tuple(t.id for t, _ in self.steps)


def compile_to_net(model: Model) -> WFNet:
    places = [SOURCE_PLACE, SINK_PLACE]
    transitions: dict[str, Task] = {}
    pre: dict[str, tuple[str, ...]] = {}
    post: dict[str, tuple[str, ...]] = {}
    silent: set[str] = set()
    place_counter = _count(1)
    and_counter = _count(1)

    def new_place() -> str:
        p = f"p{next(place_counter)}"
        places.append(p)
        return p

    def emit(task: Task, pres: list[str], posts: list[str],
             is_silent: bool = False):
        transitions[task.id] = task
        pre[task.id] = tuple(pres)
        post[task.id] = tuple(posts)
        if is_silent:
            silent.add(task.id)

    def build(block: ProcessBlock, entry: str, exit: str):
        if isinstance(block, TaskBlock):
            emit(block.task, [entry], [exit])
        elif isinstance(block, Seq):
            current = entry
            for child in block.children[:-1]:
                nxt = new_place()
                build(child, current, nxt)
                current = nxt
            build(block.children[-1], current, exit)
        elif isinstance(block, Xor):
            for child in block.children:
                build(child, entry, exit)
        elif isinstance(block, AndBlock):
            n = next(and_counter)
            entries = [new_place() for _ in block.children]
            exits = [new_place() for _ in block.children]
            emit(Task(f"__fork{n}"), [entry], entries, is_silent=True)
            emit(Task(f"__join{n}"), exits, [exit], is_silent=True)
            for child, e_in, e_out in zip(block.children, entries, exits):
                build(child, e_in, e_out)
        else:
            raise TypeError(f"not a process block: {block!r}")

    build(model.root, SOURCE_PLACE, SINK_PLACE)
    producers: dict[str, list[str]] = {}
    for tid, posts in post.items():
        for p in posts:
            producers.setdefault(p, []).append(tid)
    return WFNet(tuple(places), transitions, pre, post, frozenset(silent),
                 producers={p: tuple(sorted(ts))
                            for p, ts in producers.items()})


def enabled(net: WFNet, marking: Marking) -> set[Task]:
    """All transitions, silent ones included, fireable in this marking."""
    counts = marking.as_dict()
    out = set()
    for tid, pres in net.pre.items():
        if all(counts.get(p, 0) >= 1 for p in pres):
            out.add(net.transitions[tid])
    return out


def fire(net: WFNet, marking: Marking, t: Task) -> Marking:
    """Consume one token per input place, produce one per output place."""
    if t.id not in net.transitions:
        raise NotEnabled(f"unknown transition {t.id!r}")
    counts = marking.as_dict()
    for p in net.pre[t.id]:
        if counts.get(p, 0) < 1:
            raise NotEnabled(f"{t.id!r} lacks a token on {p!r}")
        counts[p] -= 1
    for p in net.post[t.id]:
        counts[p] = counts.get(p, 0) + 1
    return Marking.of(counts)


def _fire_counts(net: WFNet, counts: dict[str, int], tid: str):
    for p in net.pre[tid]:
        counts[p] = counts.get(p, 0) - 1
    for p in net.post[tid]:
        counts[p] = counts.get(p, 0) + 1


def _silent_path_to(net: WFNet, counts: dict[str, int],
                    place: str) -> list[str] | None:
    """Silent firings that put a token on place, or None if impossible.

    Only transitions feeding the requested place are considered, so the
    search never commits an unrelated choice as a side effect.
    """
    if counts.get(place, 0) > 0:
        return []
    for tid in net.producers.get(place, ()):
        if tid not in net.silent_ids:
            continue
        sim = dict(counts)
        path: list[str] = []
        feasible = True
        for p in net.pre[tid]:
            sub = _silent_path_to(net, sim, p)
            if sub is None:
                feasible = False
                break
            for s in sub:
                _fire_counts(net, sim, s)
            path.extend(sub)
        if not feasible:
            continue
        path.append(tid)
        return path
    return None


def _moves(net: WFNet, counts: dict[str, int],
           fired: set[str]) -> list[tuple[str, list[str]]]:
    """Tasks that can fire next, each with its forced silent prefix."""
    out = []
    for tid in net.visible_ids():
        if tid in fired:
            continue
        sim = dict(counts)
        path: list[str] = []
        feasible = True
        for p in net.pre[tid]:
            sub = _silent_path_to(net, sim, p)
            if sub is None:
                feasible = False
                break
            for s in sub:
                _fire_counts(net, sim, s)
            path.extend(sub)
        if feasible:
            out.append((tid, path))
    return out


def enumerate_executions(model: Model,
                         cap: int = DEFAULT_CAP) -> Iterator[Execution]:
    """Yield every run exactly once, depth-first, next task ordered by id."""
    total = count_executions(model.root)
    if total > cap:
        raise ExecutionCapExceeded(total, cap)
    net = compile_to_net(model)
    return _enumerate_net(net)


def _enumerate_net(net: WFNet) -> Iterator[Execution]:
    def walk(counts: dict[str, int], fired: set[str],
             steps: list[Task], firing: list[str]) -> Iterator[Execution]:
        moves = _moves(net, counts, fired)
        if not moves:
            if dict((p, c) for p, c in counts.items() if c) != {net.sink: 1}:
                raise RuntimeError(f"deadlocked marking {counts!r}")
            yield Execution(tuple(steps), tuple(firing))
            return
        for tid, path in moves:
            nxt = dict(counts)
            for s in path:
                _fire_counts(net, nxt, s)
            _fire_counts(net, nxt, tid)
            task = net.transitions[tid]
            steps.append(task)
            firing.extend(path)
            firing.append(tid)
            yield from walk(nxt, fired | {tid}, steps, firing)
            steps.pop()
            del firing[len(firing) - len(path) - 1:]

    yield from walk({net.source: 1}, set(), [], [])


def derive_trace(model: Model, execution: Execution) -> Trace:
    """Fold the task annotations over the empty state, step by step."""
    return Trace.from_tasks(execution.steps)


def replay(net: WFNet, firing: tuple[str, ...]) -> list[Marking]:
    """Fire a full transition sequence, returning the markings visited."""
    marking = net.initial_marking()
    seen = [marking]
    for tid in firing:
        marking = fire(net, marking, net.transitions[tid])
        seen.append(marking)
    return seen
