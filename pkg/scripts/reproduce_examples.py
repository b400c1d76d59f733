"""Recompute the headline numbers of the worked examples from the fixtures."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from bayesbias import (
    check_conformity,
    check_justification,
    classify_situation,
    conditional_probability,
    find_balancing,
    format_rational,
    plan_from_beliefs,
    rationalize_by_beliefs,
    rationalize_by_evidence,
    sound_posterior,
)
from bayesbias.formats import parse_model_file


@dataclass
class Config:
    fixtures: Path = Path(__file__).resolve().parent.parent / "fixtures"


def run(cfg: Config) -> None:
    load = lambda name: parse_model_file(cfg.fixtures / name)
    r = format_rational

    ex1, ex2 = load("example1.json"), load("example2.json")
    print("two overlapping events")
    print("  heuristic P[e | Empty]   ", r(conditional_probability(ex1, ["e"], "Empty")))
    print("  sound     Q[e | Empty]   ", r(sound_posterior(ex2, ["e"], "Empty")))
    verdict = check_justification(ex2, ex1)
    print("  conforms / justifies     ", bool(check_conformity(ex2, ex1)), bool(verdict))
    for x in verdict.mismatches:
        print(f"    ({x.state}, {x.event}): sound {r(x.sound)} vs heuristic {r(x.heuristic)}")
    print("  balanced                 ", find_balancing(ex1) is not None)

    ex3 = load("example3.json")
    theta = find_balancing(ex3)
    print("three-cycle")
    print("  theta                    ", {k: r(v) for k, v in theta.theta.items()})
    for name in ("situation_full_example1.json", "situation_full_partition.json", "situation_full_example3.json"):
        print(f"  {name:<32}", classify_situation(load(name)).tag.value)

    print("plans")
    plan4, skel4 = load("example4_plan.json"), load("example4_skeleton.json")
    print("  win/draw plan from beliefs", plan_from_beliefs(load("example4_beliefs.json"), load("example4_utilities.json")) == plan4)
    print("  win/draw  by evidence / by beliefs",
          rationalize_by_evidence(skel4, plan4) is not None, rationalize_by_beliefs(skel4, plan4) is not None)
    tie, skel1 = load("plan_tie.json"), load("example1_skeleton.json")
    print("  tie plan  by evidence / by beliefs",
          rationalize_by_evidence(skel1, tie) is not None, rationalize_by_beliefs(skel1, tie) is not None)
    always_h = load("example5_plan.json")
    print("  always-h  by evidence (fixed prior) / by beliefs",
          rationalize_by_evidence(ex1.skeleton, always_h, ex1.prior) is not None,
          rationalize_by_beliefs(ex1.skeleton, always_h) is not None)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixtures", type=Path, default=Config.fixtures)
    args = parser.parse_args()
    run(Config(fixtures=args.fixtures))


if __name__ == "__main__":
    main()
