#!/usr/bin/env python3
"""Regenerate the shipped sample files under data/.

The model is the parallel-choice example used throughout the test
suite: an AND block interleaving an a/b-or-c choice with a c,d task,
followed by a task that retracts a.  The rule file holds the single
local achievement rule <b, a, d> ("after a task asserting a, reach b
before d").

Usage: python scripts/regen_sample_data.py [--out-dir data]
"""
import argparse
from pathlib import Path

from wfcheck.fileio import dump_model, dump_rules, load_model, load_rules
from wfcheck.formula import parse_formula
from wfcheck.obligations import Kind, Obligation, RuleSet
from wfcheck.process import and_, seq, task, validate, xor


def build_sample():
    body = seq(
        and_(xor(task("t1", "a"), task("t2", "b", "c")),
             task("t3", "c", "d")),
        task("t4", "-a"),
    )
    model = validate(body, name="parallel_choice")
    rules = RuleSet((Obligation(Kind.ACHIEVEMENT, parse_formula("b"),
                                trigger=parse_formula("a"),
                                deadline=parse_formula("d")),))
    return model, rules


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("data"))
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    model, rules = build_sample()
    model_path = args.out_dir / "parallel_choice.model.json"
    rules_path = args.out_dir / "parallel_choice.rules.json"
    dump_model(model, model_path)
    dump_rules(rules, rules_path)

    assert load_model(model_path) == model
    assert load_rules(rules_path) == rules
    print(f"wrote {model_path} and {rules_path} (round-trip verified)")


if __name__ == "__main__":
    main()
