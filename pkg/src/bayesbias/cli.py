"""Command-line front end.

Exit codes: 0 for valid / feasible / true verdicts, 1 for infeasible / false
verdicts, 2 for parse and validation errors, 3 for I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from bayesbias.balance import BalancingFunction, find_balancing, verify_balancing
from bayesbias.beliefs import ModelOfBeliefs, check_conformity, check_justification, sound_posterior
from bayesbias.classify import Situation, classify_situation
from bayesbias.constructions import (
    build_conforming,
    build_conforming_nonjustifying,
    build_justifying,
    overlap_gap,
    select_overlap_pair,
)
from bayesbias.evidence import ModelError, ModelOfEvidence, Skeleton, conditional_probability
from bayesbias.formats import ParseError, ValidationError, parse_model_file, to_document
from bayesbias.plans import (
    Plan,
    UtilityTable,
    lift_to_worlds,
    plan_from_beliefs,
    plan_from_evidence,
    rationalize_by_beliefs,
    rationalize_by_evidence,
)
from bayesbias.ratkernel import format_rational, rat_compare

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3


class _Fail(Exception):
    """Wrong kind of document for a command argument."""


def _load(path: str, *kinds: type):
    obj = parse_model_file(path)
    if kinds and not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in kinds)
        raise _Fail(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


def _theta_doc(theta) -> dict:
    return {k: format_rational(v) for k, v in theta.theta.items()}


def cmd_validate(args) -> tuple[dict, int]:
    obj = _load(args.file)
    return {"command": "validate", "file": args.file, "kind": to_document(obj)["kind"], "verdict": "valid"}, EXIT_OK


def cmd_posterior(args) -> tuple[dict, int]:
    e = _load(args.file, ModelOfEvidence)
    states = [s for s in args.of.split(",") if s]
    heuristic = conditional_probability(e, states, args.given)
    report = {"command": "posterior", "of": states, "given": args.given, "heuristic": format_rational(heuristic)}
    if args.sound:
        m = _load(args.sound, ModelOfBeliefs)
        if m.base.states != e.states or m.base.events != e.events:
            raise ModelError("beliefs model and evidence model have different states or events")
        sound = sound_posterior(m, states, args.given)
        report["sound"] = format_rational(sound)
        report["sound_vs_heuristic"] = rat_compare(sound, heuristic).name
    return report, EXIT_OK


def cmd_balance(args) -> tuple[dict, int]:
    e = _load(args.file, ModelOfEvidence)
    theta = find_balancing(e)
    if theta is None:
        return {"command": "balance", "verdict": "unbalanced"}, EXIT_FALSE
    return {"command": "balance", "verdict": "balanced", "theta": _theta_doc(theta)}, EXIT_OK


def cmd_justify(args) -> tuple[dict, int]:
    m = _load(args.beliefs, ModelOfBeliefs)
    e = _load(args.against, ModelOfEvidence)
    conform = check_conformity(m, e)
    verdict = check_justification(m, e)
    report = {
        "command": "justify",
        "conforms": conform.ok,
        "justifies": verdict.ok,
        "reason": verdict.reason,
        "mismatches": [
            {"state": x.state, "event": x.event, "sound": format_rational(x.sound), "heuristic": format_rational(x.heuristic)}
            for x in verdict.mismatches
        ],
    }
    return report, EXIT_OK if verdict else EXIT_FALSE


def cmd_construct(args) -> tuple[dict, int]:
    e = _load(args.file, ModelOfEvidence)
    report = {"command": "construct", "construction": args.construction}
    if args.construction == "conforming":
        report["model"] = to_document(build_conforming(e))
        return report, EXIT_OK
    if args.theta:
        theta = _load(args.theta, BalancingFunction)
        if not verify_balancing(e, theta):
            raise ModelError("supplied theta is not a balancing function for this model")
    else:
        theta = find_balancing(e)
        if theta is None:
            report["verdict"] = "not-possible"
            report["reason"] = "evidence model is unbalanced"
            return report, EXIT_FALSE
    report["theta"] = _theta_doc(theta)
    if args.construction == "justifying":
        report["model"] = to_document(build_justifying(e, theta))
        return report, EXIT_OK
    model = build_conforming_nonjustifying(e, theta)
    if model is None:
        report["verdict"] = "not-possible"
        report["reason"] = "evidential events form an almost-sure partition"
        return report, EXIT_FALSE
    pair = select_overlap_pair(e)
    sound, heuristic = overlap_gap(model, e, pair)
    report["pair"] = list(pair)
    report["gap"] = {"sound": format_rational(sound), "heuristic": format_rational(heuristic)}
    report["model"] = to_document(model)
    return report, EXIT_OK


def cmd_classify(args) -> tuple[dict, int]:
    s = _load(args.file, Situation)
    result = classify_situation(s)
    return {"command": "classify", "scope": "full" if s.is_full else len(s.scope),
            "tag": result.tag.value, "trail": list(result.evidence_trail)}, EXIT_OK


def cmd_rationalize(args) -> tuple[dict, int]:
    plan = _load(args.plan, Plan)
    skel_obj = _load(args.skeleton, ModelOfEvidence, Skeleton)
    skeleton = skel_obj.skeleton if isinstance(skel_obj, ModelOfEvidence) else skel_obj
    report = {"command": "rationalize", "by": args.by, "fixed_prior": bool(args.fixed_prior)}
    if args.by == "evidence":
        prior = None
        if args.fixed_prior:
            if not isinstance(skel_obj, ModelOfEvidence):
                raise _Fail("--fixed-prior needs a skeleton file that carries a prior")
            prior = skel_obj.prior
        witness = rationalize_by_evidence(skeleton, plan, prior)
    else:
        if args.fixed_prior:
            raise _Fail("--fixed-prior applies only to --by evidence")
        witness = rationalize_by_beliefs(skeleton, plan)
    if witness is None:
        report["verdict"] = "infeasible"
        return report, EXIT_FALSE
    report["verdict"] = "feasible"
    report["model"] = to_document(witness.model)
    report["utilities"] = to_document(witness.utilities)
    report["replay"] = to_document(witness.replay())
    return report, EXIT_OK


def cmd_plan(args) -> tuple[dict, int]:
    model = _load(args.file, ModelOfEvidence, ModelOfBeliefs)
    u = _load(args.utilities, UtilityTable)
    if isinstance(model, ModelOfEvidence):
        plan = plan_from_evidence(model, u)
    else:
        if all(isinstance(p, str) for _, p in u.values):
            u = lift_to_worlds(u, model)
        plan = plan_from_beliefs(model, u)
    return {"command": "plan", "plan": to_document(plan)}, EXIT_OK


def _text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            lines.append(f"{key}:")
            lines.extend("  " + line for line in json.dumps(value, indent=2).splitlines())
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand's default from clobbering a --json given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit machine-readable JSON only")

    parser = argparse.ArgumentParser(prog="bayesbias", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit machine-readable JSON only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and validate a model file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("posterior", parents=[common], help="heuristic (and optionally sound) posterior")
    p.add_argument("file")
    p.add_argument("--of", required=True, help="comma-separated state ids")
    p.add_argument("--given", required=True, help="event name or OMEGA")
    p.add_argument("--sound", metavar="BELIEFS_FILE")
    p.set_defaults(func=cmd_posterior)

    p = sub.add_parser("balance", parents=[common], help="find a balancing function")
    p.add_argument("file")
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("justify", parents=[common], help="check conformity and justification")
    p.add_argument("beliefs")
    p.add_argument("--against", required=True, metavar="EVIDENCE_FILE")
    p.set_defaults(func=cmd_justify)

    p = sub.add_parser("construct", parents=[common], help="build a belief model from an evidence model")
    p.add_argument("construction", choices=["conforming", "justifying", "counterexample"])
    p.add_argument("file")
    p.add_argument("--theta", metavar="THETA_FILE")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", parents=[common], help="type 1/2/3 classification of a situation")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("rationalize", parents=[common], help="decide rationalizability of a plan")
    p.add_argument("plan")
    p.add_argument("--skeleton", required=True)
    p.add_argument("--by", required=True, choices=["evidence", "beliefs"])
    p.add_argument("--fixed-prior", action="store_true", help="pin the prior given in the skeleton file")
    p.set_defaults(func=cmd_rationalize)

    p = sub.add_parser("plan", parents=[common], help="argmax plan of a model and utility table")
    p.add_argument("file")
    p.add_argument("--utilities", required=True)
    p.set_defaults(func=cmd_plan)
    return parser


def run_command(argv) -> tuple[dict, int]:
    return _dispatch(build_parser().parse_args(argv))


def _dispatch(args) -> tuple[dict, int]:
    try:
        return args.func(args)
    except OSError as exc:
        return {"command": args.command, "error": {"type": "io", "message": str(exc)}}, EXIT_IO
    except ValidationError as exc:
        return {"command": args.command, "error": {
            "type": "validation", "location": exc.location, "violations": [str(v) for v in exc.violations],
        }}, EXIT_INVALID
    except ParseError as exc:
        return {"command": args.command, "error": {
            "type": "parse", "location": exc.location, "message": exc.message,
        }}, EXIT_INVALID
    except (ModelError, _Fail) as exc:
        return {"command": args.command, "error": {"type": "invalid", "message": str(exc)}}, EXIT_INVALID


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report, code = _dispatch(args)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
