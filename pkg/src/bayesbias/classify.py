"""Type 1/2/3 classification of situations.

A FULL situation ranges over every conforming belief model, so it is
classified by characterization rather than enumeration: unbalanced means
type 1, balanced with an almost-sure partition means type 2, otherwise
type 3.  An explicit situation is classified by checking each listed model.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

from bayesbias.balance import find_balancing
from bayesbias.beliefs import ModelOfBeliefs, check_conformity, check_justification, validate_beliefs
from bayesbias.evidence import ModelError, ModelOfEvidence
from bayesbias.ratkernel import format_rational

FULL = "full"


def is_as_partition(e: ModelOfEvidence) -> bool:
    names = list(e.events)
    return all(
        e.prob(e.events[c] & e.events[d]) == 0
        for i, c in enumerate(names)
        for d in names[i + 1:]
    )


class SituationTag(enum.Enum):
    TYPE1 = "TYPE1"
    TYPE2 = "TYPE2"
    TYPE3 = "TYPE3"


@dataclass(frozen=True)
class Situation:
    evidence: ModelOfEvidence
    scope: Union[str, Sequence[ModelOfBeliefs]] = FULL

    def __post_init__(self):
        if isinstance(self.scope, str):
            if self.scope != FULL:
                raise ModelError(f"scope must be {FULL!r} or a list of belief models")
            return
        scope = tuple(self.scope)
        if not scope:
            raise ModelError("an explicit scope must list at least one belief model")
        for k, m in enumerate(scope):
            problems = validate_beliefs(m)
            if problems:
                raise ModelError(f"scope model {k} is not a model of beliefs: {problems[0]}")
            verdict = check_conformity(m, self.evidence)
            if not verdict:
                raise ModelError(f"scope model {k} does not conform: {verdict.reason}")
        object.__setattr__(self, "scope", scope)

    @property
    def is_full(self) -> bool:
        return self.scope == FULL


@dataclass(frozen=True)
class SituationType:
    tag: SituationTag
    evidence_trail: tuple[str, ...]


def classify_situation(s: Situation) -> SituationType:
    if s.is_full:
        theta = find_balancing(s.evidence)
        if theta is None:
            return SituationType(SituationTag.TYPE1, (
                "evidence model is not balanced",
                "unbalanced implies type 1; full and type 1 implies unbalanced",
            ))
        shown = ", ".join(f"{k}={format_rational(v)}" for k, v in theta.theta.items())
        if is_as_partition(s.evidence):
            return SituationType(SituationTag.TYPE2, (
                f"evidence model is balanced (theta: {shown})",
                "evidential events form an almost-sure partition, which implies type 2",
            ))
        return SituationType(SituationTag.TYPE3, (
            f"evidence model is balanced (theta: {shown}), so the full situation is not type 1",
            "evidential events overlap with positive probability, so the full situation is not type 2",
        ))

    trail = []
    justified = []
    for k, m in enumerate(s.scope):
        verdict = check_justification(m, s.evidence)
        justified.append(verdict.ok)
        trail.append(f"model {k}: " + ("justifies" if verdict else f"does not justify ({verdict.reason})"))
    if not any(justified):
        tag = SituationTag.TYPE1
    elif all(justified):
        tag = SituationTag.TYPE2
    else:
        tag = SituationTag.TYPE3
    return SituationType(tag, tuple(trail))
