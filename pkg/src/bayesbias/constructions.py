"""Explicit belief-model constructions over a finite model of evidence.

The continuum constructions (an interval coordinate per state, stacked
step functions, a null exceptional set) are replaced by the finite world
tables they induce.  Only the masses of the cells matter for conformity
and justification, so nothing is lost:

* :func:`build_conforming` weights event ``B_s`` by ``2**-s`` and sends
  states outside ``B_s`` to the first event containing them.
* :func:`build_justifying` puts mass ``theta(B) * P(w)`` on ``(w, B)``.
* :func:`build_conforming_nonjustifying` mixes half of the justifying model
  with half of a model that routes every state to the first event that
  contains it, after moving an overlapping pair of events to the front.
"""

from __future__ import annotations

from fractions import Fraction

from bayesbias.balance import BalancingFunction, verify_balancing
from bayesbias.beliefs import ModelOfBeliefs, sound_posterior
from bayesbias.classify import is_as_partition
from bayesbias.evidence import ModelError, ModelOfEvidence, Skeleton, conditional_probability

HALF = Fraction(1, 2)


def build_conforming(e: ModelOfEvidence) -> ModelOfBeliefs:
    names = list(e.events)
    weights = [Fraction(1, 2 ** (s + 1)) for s in range(len(names))]
    total = sum(weights, Fraction(0))
    rows = []
    for s in e.states:
        first = names[e.skeleton.first_index(s)]
        for name, w in zip(names, weights):
            kind = name if s in e.events[name] else first
            rows.append((s, name, kind, w * e.prior[s] / total))
    return ModelOfBeliefs.from_table(e.skeleton, rows)


def build_justifying(e: ModelOfEvidence, t: BalancingFunction) -> ModelOfBeliefs:
    if not verify_balancing(e, t):
        raise ModelError("not a balancing function for this model of evidence")
    rows = [
        (s, name, name, t.theta[name] * e.prior[s])
        for s in e.states
        for name, members in e.events.items()
        if s in members
    ]
    return ModelOfBeliefs.from_table(e.skeleton, rows)


def select_overlap_pair(e: ModelOfEvidence) -> tuple[str, str] | None:
    """First pair ``(C, D)`` in input order with ``P(C & D) > 0``, oriented so ``D`` is not inside ``C``."""
    names = list(e.events)
    for i, c in enumerate(names):
        for d in names[i + 1:]:
            if e.prob(e.events[c] & e.events[d]) > 0:
                if e.events[d] <= e.events[c]:
                    return d, c
                return c, d
    return None


def build_conforming_nonjustifying(e: ModelOfEvidence, t: BalancingFunction) -> ModelOfBeliefs | None:
    """A conforming model that fails justification, or None when ``E'`` is an a.s. partition.

    The returned model's worlds keep the input event order; the selected pair
    only decides where the second half of each state's mass goes.
    """
    if not verify_balancing(e, t):
        raise ModelError("not a balancing function for this model of evidence")
    if is_as_partition(e):
        return None
    pair = select_overlap_pair(e)
    order = list(pair) + [n for n in e.events if n not in pair]
    reordered = Skeleton(e.states, {n: e.events[n] for n in order})
    rows = []
    for s in e.states:
        for name, members in e.events.items():
            if s in members:
                rows.append((s, f"lo:{name}", name, HALF * t.theta[name] * e.prior[s]))
        first = order[reordered.first_index(s)]
        rows.append((s, f"hi:{first}", first, HALF * e.prior[s]))
    return ModelOfBeliefs.from_table(e.skeleton, rows)


def overlap_gap(m: ModelOfBeliefs, e: ModelOfEvidence, pair: tuple[str, str]) -> tuple[Fraction, Fraction]:
    """``(Q[alpha(C & D) | beta(D)], P[C & D | D])`` for ``pair = (C, D)``.

    For the output of :func:`build_conforming_nonjustifying` the first value
    is strictly smaller than the second.
    """
    c, d = pair
    overlap = e.events[c] & e.events[d]
    return sound_posterior(m, overlap, d), conditional_probability(e, overlap, d)
