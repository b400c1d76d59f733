"""Heuristic versus sound Bayesian inference on finite models, in exact rationals."""

from bayesbias.balance import (
    BalancingFunction,
    extract_balancing,
    find_balancing,
    verify_balancing,
)
from bayesbias.beliefs import (
    CheckResult,
    Mismatch,
    ModelOfBeliefs,
    World,
    alpha_embed,
    beta_event,
    check_conformity,
    check_justification,
    sound_posterior,
    validate_beliefs,
)
from bayesbias.classify import (
    FULL,
    Situation,
    SituationTag,
    SituationType,
    classify_situation,
    is_as_partition,
)
from bayesbias.constructions import (
    build_conforming,
    build_conforming_nonjustifying,
    build_justifying,
    overlap_gap,
    select_overlap_pair,
)
from bayesbias.evidence import (
    OMEGA,
    ModelError,
    ModelOfEvidence,
    Skeleton,
    Violation,
    conditional_probability,
    validate_evidence,
)
from bayesbias.plans import (
    Mode,
    Plan,
    RationalizationWitness,
    UtilityTable,
    plan_from_beliefs,
    plan_from_evidence,
    rationalize_by_beliefs,
    rationalize_by_evidence,
)
from bayesbias.ratkernel import (
    FeasibilityOutcome,
    LinConstraint,
    Relation,
    format_rational,
    parse_rational,
    rat_compare,
    solve_strict_feasibility,
)

__version__ = "0.1.0"
