"""JSON documents for every domain object.

Each file is one JSON object with a top-level ``kind``.  Rationals are
canonical ``"p/q"`` or ``"p"`` strings; event maps keep their key order,
which is the enumeration order used by the constructions.

    evidence   {"states": [...], "prior": {state: r}, "events": {name: [state, ...]}}
               ("prior" omitted: a bare skeleton of states and events)
    beliefs    {"states": [...], "events": {...},
                "worlds": [{"state", "label", "type", "q"}, ...]}
    situation  {"evidence": {...}, "scope": "full" | [beliefs, ...]}
    plan       {"alternatives": [...], "choice": {event or "OMEGA": [alt, ...]}}
    utilities  {"carrier": "states", "alternatives": [...], "values": {alt: {state: r}}}
               {"carrier": "worlds", "alternatives": [...],
                "values": {alt: [{"state", "label", "type", "value"}, ...]}}
    balancing  {"theta": {event: r}}

Nested documents (the evidence and beliefs inside a situation) may omit
``kind``; beliefs inside a situation may also omit ``states``/``events``.
Errors carry a location: ``line L, column C`` for malformed JSON, a JSON
path such as ``$.worlds[2].q`` for schema and validation problems.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from bayesbias.balance import BalancingFunction
from bayesbias.beliefs import ModelOfBeliefs, World, validate_beliefs
from bayesbias.classify import FULL, Situation
from bayesbias.evidence import ModelError, ModelOfEvidence, Skeleton, validate_evidence
from bayesbias.plans import Plan, UtilityTable
from bayesbias.ratkernel import format_rational, parse_rational

KINDS = ("evidence", "beliefs", "situation", "plan", "utilities", "balancing")


class ParseError(ValueError):
    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.message = message
        self.location = location


class ValidationError(ValueError):
    """A well-formed document whose model violates the axioms."""

    def __init__(self, violations, location: str = "$"):
        self.violations = list(violations)
        self.location = location
        super().__init__(f"{location}: " + "; ".join(str(v) for v in self.violations))


def _expect(cond: bool, message: str, location: str) -> None:
    if not cond:
        raise ParseError(message, location)


def _keys(doc: Any, required: set, optional: set, location: str) -> None:
    _expect(isinstance(doc, dict), "expected a JSON object", location)
    unknown = set(doc) - required - optional
    _expect(not unknown, f"unknown fields {sorted(unknown)}", location)
    missing = required - set(doc)
    _expect(not missing, f"missing fields {sorted(missing)}", location)


def _str_list(value: Any, location: str) -> list[str]:
    _expect(isinstance(value, list) and all(isinstance(x, str) for x in value), "expected a list of strings", location)
    return list(value)


def _rational(value: Any, location: str):
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ParseError(str(exc), location) from None


def _structure(fn, location: str):
    try:
        return fn()
    except ModelError as exc:
        raise ParseError(str(exc), location) from None


def _skeleton(doc: dict, location: str) -> Skeleton:
    states = _str_list(doc["states"], f"{location}.states")
    _expect(isinstance(doc["events"], dict), "expected an object of events", f"{location}.events")
    events = {name: _str_list(members, f"{location}.events.{name}") for name, members in doc["events"].items()}
    return _structure(lambda: Skeleton(tuple(states), events), location)


def _parse_evidence(doc: dict, location: str):
    _keys(doc, {"states", "events"}, {"kind", "prior"}, location)
    skel = _skeleton(doc, location)
    if "prior" not in doc:
        return skel
    _expect(isinstance(doc["prior"], dict), "expected an object", f"{location}.prior")
    prior = {s: _rational(v, f"{location}.prior.{s}") for s, v in doc["prior"].items()}
    return _structure(lambda: ModelOfEvidence.from_skeleton(skel, prior), f"{location}.prior")


def _parse_beliefs(doc: dict, location: str, base: Skeleton | None = None) -> ModelOfBeliefs:
    if base is None:
        _keys(doc, {"states", "events", "worlds"}, {"kind"}, location)
        base = _skeleton(doc, location)
    else:
        _keys(doc, {"worlds"}, {"kind", "states", "events"}, location)
        if "states" in doc or "events" in doc:
            _keys(doc, {"worlds", "states", "events"}, {"kind"}, location)
            own = _skeleton(doc, location)
            _expect(own == base, "states/events differ from the enclosing evidence model", location)
    _expect(isinstance(doc["worlds"], list), "expected a list of worlds", f"{location}.worlds")
    rows = []
    for k, w in enumerate(doc["worlds"]):
        here = f"{location}.worlds[{k}]"
        _keys(w, {"state", "label", "type", "q"}, set(), here)
        for field in ("state", "label", "type"):
            _expect(isinstance(w[field], str), "expected a string", f"{here}.{field}")
        rows.append((w["state"], w["label"], w["type"], _rational(w["q"], f"{here}.q")))
    return _structure(lambda: ModelOfBeliefs.from_table(base, rows), f"{location}.worlds")


def _parse_plan(doc: dict, location: str) -> Plan:
    _keys(doc, {"alternatives", "choice"}, {"kind"}, location)
    alternatives = _str_list(doc["alternatives"], f"{location}.alternatives")
    _expect(isinstance(doc["choice"], dict), "expected an object", f"{location}.choice")
    choice = {ref: _str_list(v, f"{location}.choice.{ref}") for ref, v in doc["choice"].items()}
    return _structure(lambda: Plan(tuple(alternatives), choice), f"{location}.choice")


def _parse_utilities(doc: dict, location: str) -> UtilityTable:
    _keys(doc, {"carrier", "alternatives", "values"}, {"kind"}, location)
    alternatives = _str_list(doc["alternatives"], f"{location}.alternatives")
    values_doc = doc["values"]
    _expect(isinstance(values_doc, dict) and list(values_doc) == alternatives,
            "values must be keyed by the alternatives, in order", f"{location}.values")
    values = {}
    if doc["carrier"] == "states":
        for a, row in values_doc.items():
            _expect(isinstance(row, dict), "expected an object", f"{location}.values.{a}")
            for s, v in row.items():
                values[(a, s)] = _rational(v, f"{location}.values.{a}.{s}")
    elif doc["carrier"] == "worlds":
        for a, row in values_doc.items():
            _expect(isinstance(row, list), "expected a list", f"{location}.values.{a}")
            for k, cell in enumerate(row):
                here = f"{location}.values.{a}[{k}]"
                _keys(cell, {"state", "label", "type", "value"}, set(), here)
                values[(a, World(cell["state"], cell["label"], cell["type"]))] = _rational(cell["value"], f"{here}.value")
    else:
        raise ParseError("carrier must be 'states' or 'worlds'", f"{location}.carrier")
    return UtilityTable(tuple(alternatives), values)


def _parse_balancing(doc: dict, location: str) -> BalancingFunction:
    _keys(doc, {"theta"}, {"kind"}, location)
    _expect(isinstance(doc["theta"], dict), "expected an object", f"{location}.theta")
    return BalancingFunction({k: _rational(v, f"{location}.theta.{k}") for k, v in doc["theta"].items()})


def _check_evidence(obj, location: str) -> None:
    if isinstance(obj, ModelOfEvidence):
        problems = validate_evidence(obj)
    else:
        problems = obj.structure_violations()
    if problems:
        raise ValidationError(problems, location)


def _parse_situation(doc: dict, location: str, validate: bool) -> Situation:
    _keys(doc, {"evidence", "scope"}, {"kind"}, location)
    evidence = _parse_evidence(doc["evidence"], f"{location}.evidence")
    _expect(isinstance(evidence, ModelOfEvidence), "situation evidence needs a prior", f"{location}.evidence")
    if validate:
        _check_evidence(evidence, f"{location}.evidence")
    scope = doc["scope"]
    if scope == FULL:
        return Situation(evidence, FULL)
    _expect(isinstance(scope, list), "scope must be 'full' or a list of belief models", f"{location}.scope")
    models = []
    for k, m in enumerate(scope):
        model = _parse_beliefs(m, f"{location}.scope[{k}]", evidence.skeleton)
        if validate:
            problems = validate_beliefs(model)
            if problems:
                raise ValidationError(problems, f"{location}.scope[{k}]")
        models.append(model)
    try:
        return Situation(evidence, tuple(models))
    except ModelError as exc:
        raise ValidationError([exc], f"{location}.scope") from None


def from_document(doc: Any, validate: bool = True):
    """Parse a decoded JSON document into its domain object."""
    _expect(isinstance(doc, dict), "expected a JSON object", "$")
    kind = doc.get("kind")
    _expect(kind in KINDS, f"kind must be one of {list(KINDS)}", "$.kind")
    if kind == "evidence":
        obj = _parse_evidence(doc, "$")
        if validate:
            _check_evidence(obj, "$")
        return obj
    if kind == "beliefs":
        obj = _parse_beliefs(doc, "$")
        if validate:
            problems = validate_beliefs(obj)
            if problems:
                raise ValidationError(problems, "$")
        return obj
    if kind == "situation":
        return _parse_situation(doc, "$", validate)
    if kind == "plan":
        return _parse_plan(doc, "$")
    if kind == "utilities":
        return _parse_utilities(doc, "$")
    return _parse_balancing(doc, "$")


def parse_text(text: str, validate: bool = True):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return from_document(doc, validate)


def parse_model_file(path, validate: bool = True):
    """Read and parse a model file.  I/O failures propagate as :class:`OSError`."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_text(text, validate)


def _events_doc(skel: Skeleton) -> dict:
    return {name: [s for s in skel.states if s in members] for name, members in skel.events.items()}


def _worlds_doc(m: ModelOfBeliefs) -> list:
    return [
        {"state": w.state, "label": w.label, "type": w.type, "q": format_rational(m.q[w])}
        for w in m.worlds
    ]


def to_document(obj) -> dict:
    """Inverse of :func:`from_document`."""
    if isinstance(obj, ModelOfEvidence):
        return {
            "kind": "evidence",
            "states": list(obj.states),
            "prior": {s: format_rational(p) for s, p in obj.prior.items()},
            "events": _events_doc(obj.skeleton),
        }
    if isinstance(obj, Skeleton):
        return {"kind": "evidence", "states": list(obj.states), "events": _events_doc(obj)}
    if isinstance(obj, ModelOfBeliefs):
        return {
            "kind": "beliefs",
            "states": list(obj.base.states),
            "events": _events_doc(obj.base),
            "worlds": _worlds_doc(obj),
        }
    if isinstance(obj, Situation):
        scope = FULL if obj.is_full else [{"worlds": _worlds_doc(m)} for m in obj.scope]
        evidence = to_document(obj.evidence)
        del evidence["kind"]
        return {"kind": "situation", "evidence": evidence, "scope": scope}
    if isinstance(obj, Plan):
        return {
            "kind": "plan",
            "alternatives": list(obj.alternatives),
            "choice": {ref: obj.chosen(ref) for ref in obj.choice},
        }
    if isinstance(obj, UtilityTable):
        points = list(dict.fromkeys(p for _, p in obj.values))
        if all(isinstance(p, World) for p in points):
            values = {
                a: [
                    {"state": w.state, "label": w.label, "type": w.type, "value": format_rational(obj(a, w))}
                    for w in points
                    if (a, w) in obj.values
                ]
                for a in obj.alternatives
            }
            return {"kind": "utilities", "carrier": "worlds", "alternatives": list(obj.alternatives), "values": values}
        values = {a: {p: format_rational(obj(a, p)) for p in points if (a, p) in obj.values} for a in obj.alternatives}
        return {"kind": "utilities", "carrier": "states", "alternatives": list(obj.alternatives), "values": values}
    if isinstance(obj, BalancingFunction):
        return {"kind": "balancing", "theta": {k: format_rational(v) for k, v in obj.theta.items()}}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_document(obj), indent=2) + "\n"
