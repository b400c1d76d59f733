"""Finite models of beliefs and sound (type-conditioned) posteriors.

Each world carries an explicit state-of-nature coordinate, and the embedding
of objective events is the cylinder ``alpha(A) = {worlds whose state is in A}``.
Null-set qualifications are realized exactly: a clause that must hold "up to
measure zero" is checked as a zero-mass condition on the pmf.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from bayesbias.evidence import (
    OMEGA,
    ModelError,
    ModelOfEvidence,
    Skeleton,
    Violation,
    conditional_probability,
)


@dataclass(frozen=True)
class World:
    state: str
    label: str
    type: str


@dataclass(frozen=True)
class ModelOfBeliefs:
    base: Skeleton
    worlds: tuple[World, ...]
    q: Mapping[World, Fraction]

    def __post_init__(self):
        worlds = tuple(self.worlds)
        q = {w: Fraction(v) for w, v in dict(self.q).items()}
        if set(q) != set(worlds) or len(q) != len(worlds):
            raise ModelError("q must assign a mass to exactly the listed worlds")
        for w in worlds:
            if w.state not in self.base.omega:
                raise ModelError(f"world {w} has unknown state {w.state!r}")
            if w.type not in self.base.events:
                raise ModelError(f"world {w} has type {w.type!r}, not a non-trivial event")
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "q", {w: q[w] for w in worlds})

    @classmethod
    def from_table(cls, base: Skeleton, table: Iterable[tuple[str, str, str, Fraction]]) -> "ModelOfBeliefs":
        """Build from ``(state, label, type, q)`` rows."""
        rows = [(World(s, l, t), Fraction(v)) for s, l, t, v in table]
        return cls(base, tuple(w for w, _ in rows), dict(rows))

    def mass(self, worlds: Iterable[World]) -> Fraction:
        return sum((self.q[w] for w in worlds), Fraction(0))


def beta_event(m: ModelOfBeliefs, b: str) -> frozenset[World]:
    if b == OMEGA:
        return frozenset(m.worlds)
    m.base.event(b)
    return frozenset(w for w in m.worlds if w.type == b)


def alpha_embed(m: ModelOfBeliefs, a: Iterable[str]) -> frozenset[World]:
    states = m.base.states_of(a)
    return frozenset(w for w in m.worlds if w.state in states)


def validate_beliefs(m: ModelOfBeliefs) -> list[Violation]:
    out = []
    for w in m.worlds:
        if m.q[w] < 0:
            out.append(Violation("q-nonnegative", f"q{w.state, w.label} = {m.q[w]}"))
    total = m.mass(m.worlds)
    if total != 1:
        out.append(Violation("q-normalized", f"q sums to {total}"))
    keys = [(w.state, w.label) for w in m.worlds]
    if len(set(keys)) != len(keys):
        dups = sorted({k for k in keys if keys.count(k) > 1})
        out.append(Violation("world-unique", f"duplicate (state, label) pairs {dups}"))
    for name in m.base.events:
        if not any(w.type == name and m.q[w] > 0 for w in m.worlds):
            out.append(Violation("type-onto", f"no world of positive mass has type {name!r}"))
        mass = m.mass(beta_event(m, name))
        if not 0 < mass < 1:
            out.append(Violation("type-mass", f"Q(beta({name})) = {mass}, must lie strictly between 0 and 1"))
    return out


def sound_posterior(m: ModelOfBeliefs, a: Iterable[str], b: str) -> Fraction:
    """Sound posterior Q[alpha(a) | beta(b)]."""
    info = beta_event(m, b)
    denom = m.mass(info)
    if denom == 0:
        raise ModelError(f"information set of {b!r} has mass zero")
    return m.mass(alpha_embed(m, a) & info) / denom


@dataclass(frozen=True)
class Mismatch:
    state: str
    event: str
    sound: Fraction
    heuristic: Fraction


@dataclass(frozen=True)
class CheckResult:
    """Boolean verdict with a diagnostic; truthy iff ``ok``."""

    ok: bool
    reason: str = ""
    mismatches: tuple[Mismatch, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _require_same_structure(m: ModelOfBeliefs, e: ModelOfEvidence) -> None:
    if m.base.states != e.states or m.base.events != e.events:
        raise ModelError("beliefs model and evidence model have different states or events")


def check_conformity(m: ModelOfBeliefs, e: ModelOfEvidence) -> CheckResult:
    """Marginal agreement on every state and ``beta(B)`` inside ``alpha(B)`` up to null sets."""
    _require_same_structure(m, e)
    for s in e.states:
        marginal = m.mass(alpha_embed(m, [s]))
        if marginal != e.prior[s]:
            return CheckResult(False, f"marginal of state {s!r} is {marginal}, prior is {e.prior[s]}")
    for name, members in e.events.items():
        leak = m.mass(beta_event(m, name) - alpha_embed(m, members))
        if leak != 0:
            return CheckResult(False, f"Q(beta({name}) \\ alpha({name})) = {leak} > 0")
    return CheckResult(True)


def check_justification(m: ModelOfBeliefs, e: ModelOfEvidence) -> CheckResult:
    """Conformity plus equality of sound and heuristic posteriors.

    Singleton state sets suffice by additivity.  Every mismatching
    ``(state, event)`` pair is reported, events in ``E`` order (whole space
    first) and states in model order within each event.
    """
    conform = check_conformity(m, e)
    if not conform:
        return CheckResult(False, f"not conforming: {conform.reason}")
    problems = validate_beliefs(m)
    if problems:
        return CheckResult(False, f"not a model of beliefs: {problems[0]}")
    mismatches = []
    for b in e.skeleton.refs:
        for s in e.states:
            sound = sound_posterior(m, [s], b)
            heuristic = conditional_probability(e, [s], b)
            if sound != heuristic:
                mismatches.append(Mismatch(s, b, sound, heuristic))
    if mismatches:
        first = mismatches[0]
        return CheckResult(
            False,
            f"posteriors differ at ({{{first.state}}}, {first.event}): sound {first.sound} vs heuristic {first.heuristic}",
            tuple(mismatches),
        )
    return CheckResult(True)
