"""Hypothesis strategies shared across the test modules."""
import hypothesis.strategies as st

from wfcheck.formula import (FALSE, TRUE, And, Atom, Implies, Literal, Not,
                             Or, State)
from wfcheck.net import Trace
from wfcheck.obligations import Kind, Obligation, RuleSet
from wfcheck.process import (Task, and_, seq, task, validate, xor)

ATOM_POOL = ("a", "b", "c", "d", "e")


def atom_names(pool=ATOM_POOL):
    return st.sampled_from(pool)


def literals(pool=ATOM_POOL):
    return st.builds(Literal, atom_names(pool), st.booleans())


def states(pool=ATOM_POOL):
    """Consistent states: at most one polarity per atom by construction."""
    return st.dictionaries(atom_names(pool), st.booleans()).map(
        lambda d: State(frozenset(Literal(a, v) for a, v in d.items())))


def formulas(pool=ATOM_POOL, max_leaves=8, allow_constants=True):
    leaf_opts = [atom_names(pool).map(Atom)]
    if allow_constants:
        leaf_opts.append(st.sampled_from([TRUE, FALSE]))
    return st.recursive(
        st.one_of(*leaf_opts),
        lambda kids: st.one_of(
            kids.map(Not),
            st.builds(And, kids, kids),
            st.builds(Or, kids, kids),
            st.builds(Implies, kids, kids),
        ),
        max_leaves=max_leaves)


@st.composite
def models(draw, max_depth=3, max_tasks=8, pool=ATOM_POOL):
    """Random valid models with sequentially numbered task ids."""
    counter = [0]

    def fresh_task():
        counter[0] += 1
        ann = draw(states(pool))
        return task(f"t{counter[0]}", *(str(l) for l in ann))

    def build(depth):
        if counter[0] >= max_tasks or depth >= max_depth:
            return fresh_task()
        if depth > 0 and draw(st.booleans()):
            return fresh_task()
        kind = draw(st.sampled_from(("seq", "xor", "and")))
        width = draw(st.integers(2, 3))
        children = [build(depth + 1) for _ in range(width)]
        ctor = {"seq": seq, "xor": xor, "and": and_}[kind]
        return ctor(*children)

    root = build(0)
    return validate(root, name="random")


@st.composite
def linear_traces(draw, pool=ATOM_POOL, min_len=3, max_len=10):
    """Traces of a straight-line run: start, some tasks, end."""
    n = draw(st.integers(min_len, max_len))
    tasks = [Task("start")]
    for k in range(n):
        ann = draw(states(pool))
        tasks.append(Task(f"t{k + 1}", ann))
    tasks.append(Task("end"))
    return Trace.from_tasks(tasks)


def make_trace(*steps):
    """Build a trace from (id, *literal strings) tuples, start/end added."""
    tasks = [Task("start")]
    for step in steps:
        tid, *lits = step
        tasks.append(Task(tid, State.of(*lits)))
    tasks.append(Task("end"))
    return Trace.from_tasks(tasks)


def rule_fields(pool=ATOM_POOL):
    """Requirement/trigger/deadline formulas: literals or small compounds."""
    return st.one_of(
        literals(pool).map(lambda l: l.to_formula()),
        formulas(pool, max_leaves=4, allow_constants=False))


@st.composite
def any_obligations(draw, pool=ATOM_POOL):
    kind = draw(st.sampled_from((Kind.ACHIEVEMENT, Kind.MAINTENANCE)))
    rho = draw(rule_fields(pool))
    if draw(st.booleans()):
        return Obligation(kind, rho)
    return Obligation(kind, rho, draw(rule_fields(pool)),
                      draw(rule_fields(pool)))


def rule_sets(pool=ATOM_POOL, max_rules=3):
    return st.lists(any_obligations(pool), min_size=1,
                    max_size=max_rules).map(lambda obs: RuleSet(tuple(obs)))
