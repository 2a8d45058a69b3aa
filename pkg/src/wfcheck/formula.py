"""Propositional formulas, literal states and their closed-world semantics.

States are consistent sets of literals built up by annotated tasks.  A state
does not mention every atom, so formula evaluation over a state reads an
absent atom as false (closed-world).  Total interpretations are kept as a
separate type for the truth-table side of things.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Union

ATOM_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

_KEYWORDS = ("true", "false")


class FormulaSyntaxError(ValueError):
    """Raised by parse_formula; carries the byte offset of the bad token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class MissingAtom(LookupError):
    """An interpretation was asked about an atom outside its universe."""


class TooManyAtoms(ValueError):
    """Truth-table check refused: atom count above the configured bound."""


class InconsistentInput(ValueError):
    """A literal set contains some literal together with its negation."""


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not ATOM_PATTERN.fullmatch(self.name) or self.name in _KEYWORDS:
            raise ValueError(f"bad atom name: {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not:
    operand: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class TrueConst:
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class FalseConst:
    def __str__(self):
        return "false"


TRUE = TrueConst()
FALSE = FalseConst()

Formula = Union[Atom, Not, And, Or, Implies, TrueConst, FalseConst]


@dataclass(frozen=True, order=True)
class Literal:
    """An atom or its negation, the unit tasks assert and states hold."""

    atom: str
    positive: bool = True

    def __post_init__(self):
        if not ATOM_PATTERN.fullmatch(self.atom) or self.atom in _KEYWORDS:
            raise ValueError(f"bad atom name: {self.atom!r}")

    def negate(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def to_formula(self) -> Formula:
        f: Formula = Atom(self.atom)
        return f if self.positive else Not(f)

    def __str__(self):
        return self.atom if self.positive else "-" + self.atom


def parse_literal(text: str) -> Literal:
    """Read the file form of a literal: "a" positive, "-a" negative."""
    if text.startswith("-"):
        return Literal(text[1:], False)
    return Literal(text, True)


@dataclass(frozen=True)
class State:
    """A consistent set of literals; the knowledge carried along a trace."""

    literals: frozenset[Literal] = frozenset()

    def __post_init__(self):
        by_atom: dict[str, Literal] = {}
        for lit in self.literals:
            other = by_atom.get(lit.atom)
            if other is not None and other.positive != lit.positive:
                raise InconsistentInput(
                    f"state holds both {lit.atom} and -{lit.atom}")
            by_atom[lit.atom] = lit

    @classmethod
    def of(cls, *literals: str | Literal) -> "State":
        parsed = [parse_literal(l) if isinstance(l, str) else l
                  for l in literals]
        return cls(frozenset(parsed))

    def holds(self, lit: Literal) -> bool:
        return lit in self.literals

    def atoms(self) -> frozenset[str]:
        return frozenset(l.atom for l in self.literals)

    def sorted_literals(self) -> list[Literal]:
        return sorted(self.literals, key=lambda l: (l.atom, not l.positive))

    def __contains__(self, lit: Literal) -> bool:
        return lit in self.literals

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self):
        return "{" + ", ".join(str(l) for l in self.sorted_literals()) + "}"


EMPTY_STATE = State()


def update(s1: State, s2: State) -> State:
    """Overwrite s1 with the literals of s2, retracting clashing ones.

    The result keeps every literal of s1 whose negation is not asserted by
    s2, plus everything in s2.  Both arguments must already be consistent
    (State enforces that), so the result is consistent too.
    """
    if not isinstance(s1, State) or not isinstance(s2, State):
        raise InconsistentInput("update expects two State values")
    retracted = {lit.negate() for lit in s2.literals}
    return State(frozenset(l for l in s1.literals if l not in retracted)
                 | s2.literals)


@dataclass(frozen=True)
class Interpretation:
    """A total truth assignment over a finite universe of atoms."""

    assignment: tuple[tuple[str, bool], ...] = field(default=())

    @classmethod
    def of(cls, mapping: Mapping[str, bool]) -> "Interpretation":
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[str, bool]:
        return dict(self.assignment)

    def value(self, atom: str) -> bool:
        for name, val in self.assignment:
            if name == atom:
                return val
        raise MissingAtom(atom)

    def universe(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.assignment)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(->)|([!&|()])|([A-Za-z_][A-Za-z0-9_]*))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == m.start():
                at = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise FormulaSyntaxError("unexpected character",
                                         _byte_offset(text, at))
            tok = m.group(1) or m.group(2) or m.group(3)
            if tok is not None:
                self.tokens.append((tok, m.end() - len(tok)))
            pos = m.end()
        self.index = 0

    def peek(self) -> str | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index][0]
        return None

    def offset(self) -> int:
        if self.index < len(self.tokens):
            return _byte_offset(self.text, self.tokens[self.index][1])
        return _byte_offset(self.text, len(self.text))

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", self.offset())
        self.index += 1
        return tok

    def expect(self, tok: str):
        if self.peek() != tok:
            raise FormulaSyntaxError(f"expected {tok!r}", self.offset())
        self.index += 1

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", self.offset())
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.implication()
            self.expect(")")
            return f
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return FALSE
        if ATOM_PATTERN.fullmatch(tok):
            self.take()
            return Atom(tok)
        raise FormulaSyntaxError(f"unexpected token {tok!r}", self.offset())


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def parse_formula(text: str) -> Formula:
    """Parse "!a & (b | c) -> d"; ! binds tightest, -> is right-associative."""
    parser = _Parser(text)
    f = parser.implication()
    if parser.peek() is not None:
        raise FormulaSyntaxError(f"trailing input {parser.peek()!r}",
                                 parser.offset())
    return f


_PREC = {Implies: 0, Or: 1, And: 2, Not: 3}


def format_formula(f: Formula) -> str:
    """Render a formula so that parse_formula reads back the same tree."""
    return _format(f, 0)


def _format(f: Formula, parent: int) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, TrueConst):
        return "true"
    if isinstance(f, FalseConst):
        return "false"
    if isinstance(f, Not):
        text = "!" + _format(f.operand, _PREC[Not])
        prec = _PREC[Not]
    elif isinstance(f, Implies):
        text = _format(f.left, _PREC[Implies] + 1) + " -> " + _format(
            f.right, _PREC[Implies])
        prec = _PREC[Implies]
    else:
        op = " | " if isinstance(f, Or) else " & "
        prec = _PREC[type(f)]
        text = _format(f.left, prec) + op + _format(f.right, prec + 1)
    if prec < parent:
        return "(" + text + ")"
    return text


# ---------------------------------------------------------------------------
# evaluation

def eval_formula(f: Formula, s: State) -> bool:
    """Closed-world truth of f over a state: absent atoms read as false."""
    if isinstance(f, Atom):
        return Literal(f.name, True) in s
    if isinstance(f, Not):
        return not eval_formula(f.operand, s)
    if isinstance(f, And):
        return eval_formula(f.left, s) and eval_formula(f.right, s)
    if isinstance(f, Or):
        return eval_formula(f.left, s) or eval_formula(f.right, s)
    if isinstance(f, Implies):
        return not eval_formula(f.left, s) or eval_formula(f.right, s)
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    raise TypeError(f"not a formula: {f!r}")


def eval_under_interpretation(f: Formula, interp: Interpretation) -> bool:
    """Classical truth under a total assignment; unknown atoms are an error."""
    if isinstance(f, Atom):
        return interp.value(f.name)
    if isinstance(f, Not):
        return not eval_under_interpretation(f.operand, interp)
    if isinstance(f, And):
        return (eval_under_interpretation(f.left, interp)
                and eval_under_interpretation(f.right, interp))
    if isinstance(f, Or):
        return (eval_under_interpretation(f.left, interp)
                or eval_under_interpretation(f.right, interp))
    if isinstance(f, Implies):
        return (not eval_under_interpretation(f.left, interp)
                or eval_under_interpretation(f.right, interp))
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    raise TypeError(f"not a formula: {f!r}")


def atoms(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset((f.name,))
    if isinstance(f, Not):
        return atoms(f.operand)
    if isinstance(f, (And, Or, Implies)):
        return atoms(f.left) | atoms(f.right)
    return frozenset()


def closed_world(s: State, universe: Iterable[str]) -> Interpretation:
    """The total assignment a state induces: atom true iff asserted positive."""
    return Interpretation.of(
        {a: Literal(a, True) in s for a in universe})


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (
        isinstance(f, Not) and isinstance(f.operand, Atom))


def formula_to_literal(f: Formula) -> Literal:
    if isinstance(f, Atom):
        return Literal(f.name, True)
    if isinstance(f, Not) and isinstance(f.operand, Atom):
        return Literal(f.operand.name, False)
    raise ValueError(f"not a literal: {format_formula(f)}")


def tautology_truth_table(f: Formula, max_atoms: int = 24) -> bool:
    """Exhaustive truth-table check that f holds under every assignment."""
    names = sorted(atoms(f))
    if len(names) > max_atoms:
        raise TooManyAtoms(
            f"{len(names)} atoms exceeds the bound of {max_atoms}")
    for values in product((False, True), repeat=len(names)):
        interp = Interpretation.of(dict(zip(names, values)))
        if not eval_under_interpretation(f, interp):
            return False
    return True


def to_nnf(f: Formula) -> Formula:
    """Negation normal form: -> eliminated, negation pushed onto atoms."""
    if isinstance(f, (Atom, TrueConst, FalseConst)):
        return f
    if isinstance(f, And):
        return And(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Or):
        return Or(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Implies):
        return Or(to_nnf(Not(f.left)), to_nnf(f.right))
    g = f.operand
    if isinstance(g, Atom):
        return f
    if isinstance(g, Not):
        return to_nnf(g.operand)
    if isinstance(g, And):
        return Or(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
    if isinstance(g, Or):
        return And(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
    if isinstance(g, Implies):
        return And(to_nnf(g.left), to_nnf(Not(g.right)))
    if isinstance(g, TrueConst):
        return FALSE
    return TRUE
