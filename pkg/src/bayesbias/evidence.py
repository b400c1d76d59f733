"""Finite models of evidence and heuristic (event-conditioned) posteriors.

A model of evidence is a finite state space with a rational prior and a
family of named evidential events.  The objective-event field is the power
set of the states, so events and arbitrary state sets are plain frozensets.
The whole space is always an implicit evidential event, referred to by the
reserved name :data:`OMEGA`.

The covering requirement is implemented as "the union of the named events
is the whole state space".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

OMEGA = "OMEGA"


class ModelError(ValueError):
    """Structurally malformed input (unknown names, duplicates, reserved words)."""


@dataclass(frozen=True)
class Violation:
    clause: str
    detail: str

    def __str__(self) -> str:
        return f"{self.clause}: {self.detail}"


@dataclass(frozen=True)
class Skeleton:
    """States and named evidential events, without any probability."""

    states: tuple[str, ...]
    events: Mapping[str, frozenset[str]]

    def __post_init__(self):
        states = tuple(self.states)
        if len(set(states)) != len(states):
            raise ModelError("duplicate state ids")
        events = {}
        for name, members in dict(self.events).items():
            if name == OMEGA:
                raise ModelError(f"{OMEGA!r} is reserved and cannot name an event")
            members = frozenset(members)
            unknown = members - set(states)
            if unknown:
                raise ModelError(f"event {name!r} has unknown states {sorted(unknown)}")
            events[name] = members
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "events", events)

    @property
    def omega(self) -> frozenset[str]:
        return frozenset(self.states)

    @property
    def refs(self) -> tuple[str, ...]:
        """Every member of E, the whole space first."""
        return (OMEGA, *self.events)

    def event(self, ref: str) -> frozenset[str]:
        if ref == OMEGA:
            return self.omega
        try:
            return self.events[ref]
        except KeyError:
            raise ModelError(f"unknown event {ref!r}") from None

    def states_of(self, states: Iterable[str]) -> frozenset[str]:
        out = frozenset(states)
        unknown = out - self.omega
        if unknown:
            raise ModelError(f"unknown states {sorted(unknown)}")
        return out

    def first_index(self, state: str) -> int:
        """Position of the first event containing ``state``."""
        for k, members in enumerate(self.events.values()):
            if state in members:
                return k
        raise ModelError(f"state {state!r} lies in no event")

    def structure_violations(self) -> list[Violation]:
        out = []
        names = list(self.events)
        if len(names) < 2:
            out.append(Violation("at-least-two-events", f"{len(names)} non-trivial event(s)"))
        for name in names:
            if self.events[name] == self.omega:
                out.append(Violation("event-not-omega", f"event {name!r} equals the whole space"))
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                if self.events[a] == self.events[b]:
                    out.append(Violation("distinct-events", f"events {a!r} and {b!r} are the same set"))
        covered = frozenset().union(*self.events.values())
        missing = [s for s in self.states if s not in covered]
        if missing:
            out.append(Violation("cover", f"states {missing} lie in no event"))
        return out


@dataclass(frozen=True)
class ModelOfEvidence:
    states: tuple[str, ...]
    prior: Mapping[str, Fraction]
    events: Mapping[str, frozenset[str]]

    def __post_init__(self):
        skel = Skeleton(self.states, self.events)
        prior = {s: Fraction(p) for s, p in dict(self.prior).items()}
        if set(prior) != set(skel.states):
            raise ModelError("prior must assign a value to exactly the listed states")
        object.__setattr__(self, "states", skel.states)
        object.__setattr__(self, "events", skel.events)
        object.__setattr__(self, "prior", {s: prior[s] for s in skel.states})
        object.__setattr__(self, "_skeleton", skel)

    @classmethod
    def from_skeleton(cls, skeleton: Skeleton, prior: Mapping[str, Fraction]) -> "ModelOfEvidence":
        return cls(skeleton.states, prior, skeleton.events)

    @property
    def skeleton(self) -> Skeleton:
        return self._skeleton

    def event(self, ref: str) -> frozenset[str]:
        return self._skeleton.event(ref)

    def prob(self, states: Iterable[str]) -> Fraction:
        return sum((self.prior[s] for s in self._skeleton.states_of(states)), Fraction(0))


def validate_evidence(m: ModelOfEvidence) -> list[Violation]:
    """All violated clauses of the evidence-model axioms; empty means valid."""
    out = []
    for s in m.states:
        if m.prior[s] < 0:
            out.append(Violation("prior-nonnegative", f"P({s}) = {m.prior[s]}"))
    total = sum(m.prior.values(), Fraction(0))
    if total != 1:
        out.append(Violation("prior-normalized", f"prior sums to {total}"))
    for name, members in m.events.items():
        if m.prob(members) <= 0:
            out.append(Violation("event-positive", f"P({name}) = {m.prob(members)}"))
    refs = m.skeleton.refs
    for b in refs:
        for c in refs:
            if b == c:
                continue
            bset, cset = m.event(b), m.event(c)
            if not cset <= bset and m.prob(cset - bset) <= 0:
                out.append(Violation("difference-positive", f"P({c} \\ {b}) = {m.prob(cset - bset)}"))
    out.extend(m.skeleton.structure_violations())
    return out


def is_valid(m: ModelOfEvidence) -> bool:
    return not validate_evidence(m)


def conditional_probability(m: ModelOfEvidence, a: Iterable[str], b: str) -> Fraction:
    """Heuristic posterior P[a | b] = P(a & b) / P(b)."""
    bset = m.event(b)
    denom = m.prob(bset)
    if denom == 0:
        raise ModelError(f"conditioning event {b!r} has probability zero")
    return m.prob(m.skeleton.states_of(a) & bset) / denom
