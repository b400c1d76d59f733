"""Balancedness of a model of evidence.

A balancing function puts a weight in ``(0, 1]`` on every non-trivial
event so that, for almost every state, the weights of the events containing
it sum to one.  Zero-probability states are left out of the equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from bayesbias.beliefs import ModelOfBeliefs, beta_event, check_justification
from bayesbias.evidence import ModelError, ModelOfEvidence
from bayesbias.ratkernel import LinConstraint, eq, gt, solve_strict_feasibility


@dataclass(frozen=True)
class BalancingFunction:
    theta: Mapping[str, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "theta", {k: Fraction(v) for k, v in dict(self.theta).items()})


def balancing_system(e: ModelOfEvidence) -> list[LinConstraint]:
    system = []
    for s in e.states:
        if e.prior[s] > 0:
            system.append(eq({name: 1 for name, members in e.events.items() if s in members}, 1))
    for name in e.events:
        system.append(gt({name: 1}))
    return system


def find_balancing(e: ModelOfEvidence) -> BalancingFunction | None:
    """A balancing function for ``e``, or None if ``e`` is unbalanced."""
    outcome = solve_strict_feasibility(balancing_system(e))
    if not outcome:
        return None
    theta = BalancingFunction({name: outcome.witness.get(name, Fraction(0)) for name in e.events})
    assert verify_balancing(e, theta)
    return theta


def verify_balancing(e: ModelOfEvidence, t: BalancingFunction) -> bool:
    if set(t.theta) != set(e.events):
        raise ModelError("balancing function must weight exactly the non-trivial events")
    if any(not 0 < v <= 1 for v in t.theta.values()):
        return False
    for s in e.states:
        if e.prior[s] > 0:
            total = sum((t.theta[name] for name, members in e.events.items() if s in members), Fraction(0))
            if total != 1:
                return False
    return True


def extract_balancing(m: ModelOfBeliefs, e: ModelOfEvidence) -> BalancingFunction:
    """Read off ``theta(B) = Q(beta(B)) / P(B)`` from a justifying belief model."""
    verdict = check_justification(m, e)
    if not verdict:
        raise ModelError(f"beliefs model does not justify the evidence model: {verdict.reason}")
    theta = BalancingFunction({name: m.mass(beta_event(m, name)) / e.prob(members) for name, members in e.events.items()})
    assert verify_balancing(e, theta)
    return theta
