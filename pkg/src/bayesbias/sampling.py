"""Seeded random generators for small valid models, skeletons and plans."""

from __future__ import annotations

import random
from fractions import Fraction

from bayesbias.beliefs import ModelOfBeliefs, validate_beliefs
from bayesbias.evidence import ModelOfEvidence, Skeleton, validate_evidence
from bayesbias.plans import Plan


def random_skeleton(rng: random.Random, n_states: int, n_events: int) -> Skeleton | None:
    """Distinct proper non-empty events covering the states, or None if the draw failed."""
    states = [f"s{i}" for i in range(n_states)]
    events: list[frozenset[str]] = []
    for _ in range(8 * n_events):
        if len(events) == n_events:
            break
        members = frozenset(s for s in states if rng.random() < 0.5)
        if members and len(members) < n_states and members not in events:
            events.append(members)
    if len(events) < n_events:
        return None
    covered = frozenset().union(*events)
    if covered != frozenset(states):
        return None
    return Skeleton(tuple(states), {f"E{k}": ev for k, ev in enumerate(events)})


def _partition_skeleton(rng: random.Random, n_states: int, n_events: int) -> Skeleton | None:
    states = [f"s{i}" for i in range(n_states)]
    if n_events > n_states:
        return None
    cuts = sorted(rng.sample(range(1, n_states), n_events - 1))
    shuffled = states[:]
    rng.shuffle(shuffled)
    blocks = [frozenset(shuffled[a:b]) for a, b in zip([0] + cuts, cuts + [n_states])]
    return Skeleton(tuple(states), {f"E{k}": b for k, b in enumerate(blocks)})


def random_evidence(
    rng: random.Random,
    max_states: int = 5,
    max_events: int = 5,
    zero_weight: float = 0.2,
) -> ModelOfEvidence:
    """Rejection-sample a valid model of evidence.

    A quarter of the draws use partition structure so that balanced models
    are well represented; priors are small integer weights, some of them zero.
    """
    while True:
        n = rng.randint(2, max_states)
        k = rng.randint(2, max_events)
        if rng.random() < 0.25:
            skel = _partition_skeleton(rng, n, k)
        else:
            skel = random_skeleton(rng, n, k)
        if skel is None:
            continue
        weights = [0 if rng.random() < zero_weight else rng.randint(1, 4) for _ in skel.states]
        total = sum(weights)
        if total == 0:
            continue
        model = ModelOfEvidence.from_skeleton(skel, {s: Fraction(w, total) for s, w in zip(skel.states, weights)})
        if not validate_evidence(model):
            return model


def random_conforming(rng: random.Random, e: ModelOfEvidence, max_denominator: int = 6) -> ModelOfBeliefs:
    """A valid conforming model whose worlds are the pairs (s, B) with s in B.

    Each state's prior mass is split over the events containing it with
    random weights; some splits give zero to an event.
    """
    while True:
        m = _random_split(rng, e, max_denominator)
        if not validate_beliefs(m):
            return m


def _random_split(rng: random.Random, e: ModelOfEvidence, max_denominator: int) -> ModelOfBeliefs:
    rows = []
    for s in e.states:
        names = [n for n, members in e.events.items() if s in members]
        weights = [rng.randint(0, max_denominator) for _ in names]
        if sum(weights) == 0:
            weights[rng.randrange(len(weights))] = 1
        total = sum(weights)
        for name, w in zip(names, weights):
            rows.append((s, name, name, e.prior[s] * Fraction(w, total)))
    return ModelOfBeliefs.from_table(e.skeleton, rows)


def random_plan(rng: random.Random, skeleton: Skeleton, alternatives: tuple[str, ...]) -> Plan:
    choice = {}
    for ref in skeleton.refs:
        chosen = [a for a in alternatives if rng.random() < 0.5]
        choice[ref] = chosen or [rng.choice(alternatives)]
    return Plan(alternatives, choice)
