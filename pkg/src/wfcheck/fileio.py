"""JSON file formats for models, rule sets and compliance reports.

A model file stores the block tree the user authored; the reserved
start/end wrapper is re-created on load, so load(dump(m)) rebuilds an
equal model.  Rule files hold formula strings in the parser's syntax, a
null trigger/deadline pair meaning the rule is in force globally.
"""
from __future__ import annotations

import json
from pathlib import Path

from .engine import ComplianceReport, Witness
from .formula import (InconsistentInput, State, format_formula,
                      parse_formula)
from .obligations import Kind, Obligation, RuleSet
from .process import (AndBlock, InconsistentAnnotation, Model, ProcessBlock,
                      Seq, Task, TaskBlock, Xor, validate)


class FileFormatError(ValueError):
    """The JSON is well-formed but does not describe a valid object."""


def _block_to_dict(block: ProcessBlock) -> dict:
    if isinstance(block, TaskBlock):
        return {"type": "task", "id": block.task.id,
                "ann": [str(l) for l in block.task.annotation.sorted_literals()]}
    tag = {Seq: "seq", Xor: "xor", AndBlock: "and"}[type(block)]
    return {"type": tag,
            "children": [_block_to_dict(c) for c in block.children]}


def _block_from_dict(obj) -> ProcessBlock:
    if not isinstance(obj, dict) or "type" not in obj:
        raise FileFormatError(f"expected a block object, got {obj!r}")
    kind = obj["type"]
    if kind == "task":
        if "id" not in obj:
            raise FileFormatError("task block without an id")
        ann = obj.get("ann", [])
        try:
            state = State.of(*ann)
        except InconsistentInput as err:
            raise InconsistentAnnotation(
                f"task {obj['id']!r}: {err}") from err
        return TaskBlock(Task(obj["id"], state))
    try:
        ctor = {"seq": Seq, "xor": Xor, "and": AndBlock}[kind]
    except KeyError:
        raise FileFormatError(f"unknown block type {kind!r}") from None
    children = obj.get("children", [])
    if not isinstance(children, list):
        raise FileFormatError("children must be a list")
    return ctor(tuple(_block_from_dict(c) for c in children))


def model_to_dict(m: Model) -> dict:
    return {"name": m.name, "root": _block_to_dict(m.body)}


def model_from_dict(obj) -> Model:
    if not isinstance(obj, dict) or "root" not in obj:
        raise FileFormatError("model file needs a top-level 'root' block")
    return validate(_block_from_dict(obj["root"]),
                    name=obj.get("name", "model"))


def load_model(path) -> Model:
    return model_from_dict(json.loads(Path(path).read_text("utf-8")))


def dump_model(m: Model, path) -> None:
    Path(path).write_text(
        json.dumps(model_to_dict(m), indent=2) + "\n", "utf-8")


def _obligation_to_dict(o: Obligation) -> dict:
    return {
        "kind": o.kind.value,
        "requirement": format_formula(o.requirement),
        "trigger": None if o.trigger is None else format_formula(o.trigger),
        "deadline": None if o.deadline is None else format_formula(o.deadline),
    }


def _obligation_from_dict(obj) -> Obligation:
    if not isinstance(obj, dict):
        raise FileFormatError(f"expected an obligation object, got {obj!r}")
    try:
        kind = Kind(obj["kind"])
        requirement = parse_formula(obj["requirement"])
    except KeyError as err:
        raise FileFormatError(f"obligation without {err}") from None
    except ValueError as err:
        raise FileFormatError(str(err)) from err
    trigger = obj.get("trigger")
    deadline = obj.get("deadline")
    return Obligation(
        kind, requirement,
        None if trigger is None else parse_formula(trigger),
        None if deadline is None else parse_formula(deadline))


def rules_to_dict(rs: RuleSet) -> dict:
    return {"obligations": [_obligation_to_dict(o) for o in rs.obligations]}


def rules_from_dict(obj) -> RuleSet:
    if not isinstance(obj, dict) or "obligations" not in obj:
        raise FileFormatError("rules file needs an 'obligations' array")
    return RuleSet(tuple(_obligation_from_dict(o)
                         for o in obj["obligations"]))


def load_rules(path) -> RuleSet:
    return rules_from_dict(json.loads(Path(path).read_text("utf-8")))


def dump_rules(rs: RuleSet, path) -> None:
    Path(path).write_text(
        json.dumps(rules_to_dict(rs), indent=2) + "\n", "utf-8")


def _witness_to_dict(w: Witness | None):
    if w is None:
        return None
    return {"execution": list(w.execution),
            "states": [[str(l) for l in s.sorted_literals()]
                       for s in w.states]}


def _witness_from_dict(obj) -> Witness | None:
    if obj is None:
        return None
    return Witness(tuple(obj["execution"]),
                   tuple(State.of(*lits) for lits in obj["states"]))


def report_to_dict(report: ComplianceReport) -> dict:
    return {"mode": report.mode, "verdict": report.verdict,
            "witness": _witness_to_dict(report.witness),
            "traces_examined": report.traces_examined,
            "engine": report.engine}


def report_from_dict(obj) -> ComplianceReport:
    if not isinstance(obj, dict):
        raise FileFormatError("expected a report object")
    return ComplianceReport(
        mode=obj["mode"], verdict=obj["verdict"],
        witness=_witness_from_dict(obj.get("witness")),
        traces_examined=obj["traces_examined"],
        engine=obj.get("engine", "brute"))


def format_report(report: ComplianceReport) -> str:
    return json.dumps(report_to_dict(report), indent=2)
