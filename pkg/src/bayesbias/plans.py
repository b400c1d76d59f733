"""Plans, conditional-expected-utility argmax, and rationalizability.

A plan assigns a non-empty set of alternatives to every evidential event,
the whole space included.  Rationalizability is decided by linear
feasibility after folding the unknown probabilities into the unknown
utilities:

* by evidence, over ``w[a, s] = P(s) * u_a(s)``; sums of ``w`` over each event
  must reproduce the plan's argmax sets;
* by beliefs, over ``m[a, B]``, the integral of ``v_a`` over the information
  set of type ``B``; each type is checked on its own and the whole space on
  the sum over all types.

Both folds are exact: any feasible point lifts back to a probability model
and utilities (uniform prior, or one world per type with uniform mass).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Sequence, Union

from bayesbias.beliefs import ModelOfBeliefs, World, beta_event
from bayesbias.evidence import OMEGA, ModelError, ModelOfEvidence, Skeleton, validate_evidence
from bayesbias.ratkernel import LinConstraint, eq, gt, solve_strict_feasibility


@dataclass(frozen=True)
class Plan:
    alternatives: tuple[str, ...]
    choice: Mapping[str, frozenset[str]]

    def __post_init__(self):
        alternatives = tuple(self.alternatives)
        if len(set(alternatives)) != len(alternatives):
            raise ModelError("duplicate alternatives")
        choice = {}
        for ref, chosen in dict(self.choice).items():
            chosen = frozenset(chosen)
            if not chosen:
                raise ModelError(f"plan chooses nothing at {ref!r}")
            if not chosen <= set(alternatives):
                raise ModelError(f"plan at {ref!r} chooses unknown alternatives {sorted(chosen - set(alternatives))}")
            choice[ref] = chosen
        object.__setattr__(self, "alternatives", alternatives)
        object.__setattr__(self, "choice", choice)

    def check_against(self, skeleton: Skeleton) -> None:
        if set(self.choice) != set(skeleton.refs):
            raise ModelError(
                f"plan covers events {sorted(self.choice)}, expected exactly {sorted(skeleton.refs)}"
            )

    def chosen(self, ref: str) -> list[str]:
        """Chosen alternatives at ``ref`` in alternative order."""
        return [a for a in self.alternatives if a in self.choice[ref]]


@dataclass(frozen=True)
class UtilityTable:
    """Utilities ``values[(alternative, point)]``; points are state ids or :class:`World` s."""

    alternatives: tuple[str, ...]
    values: Mapping[tuple[str, Hashable], Fraction]

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "values", {k: Fraction(v) for k, v in dict(self.values).items()})

    def require_total(self, points: Sequence[Hashable]) -> None:
        missing = [(a, p) for a in self.alternatives for p in points if (a, p) not in self.values]
        if missing:
            raise ModelError(f"utility table is missing {len(missing)} entries, e.g. {missing[0]}")

    def __call__(self, alternative: str, point: Hashable) -> Fraction:
        return self.values[(alternative, point)]


def _argmax(scores: Mapping[str, Fraction]) -> frozenset[str]:
    best = max(scores.values())
    return frozenset(a for a, v in scores.items() if v == best)


def plan_from_evidence(e: ModelOfEvidence, u: UtilityTable) -> Plan:
    u.require_total(e.states)
    choice = {}
    for ref in e.skeleton.refs:
        members = e.event(ref)
        scores = {a: sum((u(a, s) * e.prior[s] for s in e.states if s in members), Fraction(0)) for a in u.alternatives}
        choice[ref] = _argmax(scores)
    return Plan(u.alternatives, choice)


def plan_from_beliefs(m: ModelOfBeliefs, v: UtilityTable) -> Plan:
    v.require_total(m.worlds)
    choice = {}
    for ref in m.base.refs:
        info = beta_event(m, ref)
        scores = {a: sum((v(a, w) * m.q[w] for w in m.worlds if w in info), Fraction(0)) for a in v.alternatives}
        choice[ref] = _argmax(scores)
    return Plan(v.alternatives, choice)


def lift_to_worlds(u: UtilityTable, m: ModelOfBeliefs) -> UtilityTable:
    """State utilities as world utilities, ``v_a(s, label) = u_a(s)``."""
    return UtilityTable(u.alternatives, {(a, w): u(a, w.state) for a in u.alternatives for w in m.worlds})


def indicator_utilities(m: ModelOfBeliefs, plan: Plan) -> UtilityTable:
    """``v_a(world) = 1`` iff ``a`` is chosen at the world's type.

    These reproduce any plan on the non-trivial events but not, in general,
    at the whole space.
    """
    return UtilityTable(
        plan.alternatives,
        {(a, w): Fraction(int(a in plan.choice[w.type])) for a in plan.alternatives for w in m.worlds},
    )


class Mode(enum.Enum):
    BY_EVIDENCE = "evidence"
    BY_BELIEFS = "beliefs"


@dataclass(frozen=True)
class RationalizationWitness:
    mode: Mode
    model: Union[ModelOfEvidence, ModelOfBeliefs]
    utilities: UtilityTable

    def replay(self) -> Plan:
        if self.mode is Mode.BY_EVIDENCE:
            return plan_from_evidence(self.model, self.utilities)
        return plan_from_beliefs(self.model, self.utilities)


def _argmax_constraints(plan: Plan, ref: str, expr) -> list[LinConstraint]:
    """Constraints making the plan's choice at ``ref`` the argmax of ``expr(a)``."""
    chosen = plan.chosen(ref)
    rep = chosen[0]
    out = []
    for a in plan.alternatives:
        if a == rep:
            continue
        diff = dict(expr(rep))
        for var, c in expr(a).items():
            diff[var] = diff.get(var, 0) - c
        out.append(eq(diff) if a in plan.choice[ref] else gt(diff))
    return out


def evidence_system(skeleton: Skeleton, plan: Plan, prior: Mapping[str, Fraction] | None = None) -> list[LinConstraint]:
    support = [s for s in skeleton.states if prior is None or prior[s] > 0]
    system = []
    for ref in skeleton.refs:
        members = skeleton.event(ref)
        system += _argmax_constraints(plan, ref, lambda a: {("w", a, s): 1 for s in support if s in members})
    return system


def beliefs_system(skeleton: Skeleton, plan: Plan) -> list[LinConstraint]:
    names = list(skeleton.events)
    system = []
    for ref in skeleton.refs:
        if ref == OMEGA:
            expr = lambda a: {("m", a, b): 1 for b in names}
        else:
            expr = lambda a, ref=ref: {("m", a, ref): 1}
        system += _argmax_constraints(plan, ref, expr)
    return system


def rationalize_by_evidence(
    skeleton: Skeleton, plan: Plan, prior: Mapping[str, Fraction] | None = None
) -> RationalizationWitness | None:
    """Prior and utilities making ``plan`` the event-conditioned argmax, or None.

    With ``prior=None`` the prior is free and the witness uses the uniform
    one.  Passing a prior pins it and leaves only the utilities free.
    """
    plan.check_against(skeleton)
    if prior is None:
        n = len(skeleton.states)
        prior = {s: Fraction(1, n) for s in skeleton.states}
    model = ModelOfEvidence.from_skeleton(skeleton, prior)
    problems = validate_evidence(model)
    if problems:
        raise ModelError("skeleton does not carry a valid model of evidence: " + "; ".join(map(str, problems)))
    outcome = solve_strict_feasibility(evidence_system(skeleton, plan, prior))
    if not outcome:
        return None
    w = outcome.witness
    values = {}
    for a in plan.alternatives:
        for s in skeleton.states:
            p = model.prior[s]
            values[(a, s)] = w.get(("w", a, s), Fraction(0)) / p if p > 0 else Fraction(0)
    witness = RationalizationWitness(Mode.BY_EVIDENCE, model, UtilityTable(plan.alternatives, values))
    assert witness.replay() == plan
    return witness


def rationalize_by_beliefs(skeleton: Skeleton, plan: Plan) -> RationalizationWitness | None:
    """Belief model and utilities making ``plan`` the type-conditioned argmax, or None.

    The witness has one world per type, placed at the first state of that
    event, with uniform mass.
    """
    plan.check_against(skeleton)
    names = list(skeleton.events)
    if len(names) < 2:
        raise ModelError("a model of beliefs needs at least two non-trivial events")
    outcome = solve_strict_feasibility(beliefs_system(skeleton, plan))
    if not outcome:
        return None
    n = len(names)
    worlds = []
    for b in names:
        state = next(s for s in skeleton.states if s in skeleton.events[b])
        worlds.append(World(state, b, b))
    model = ModelOfBeliefs(skeleton, tuple(worlds), {w: Fraction(1, n) for w in worlds})
    m = outcome.witness
    values = {(a, w): n * m.get(("m", a, w.type), Fraction(0)) for a in plan.alternatives for w in worlds}
    witness = RationalizationWitness(Mode.BY_BELIEFS, model, UtilityTable(plan.alternatives, values))
    assert witness.replay() == plan
    return witness
