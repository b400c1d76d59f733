import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bayesbias.beliefs import (
    ModelOfBeliefs,
    alpha_embed,
    beta_event,
    check_conformity,
    check_justification,
    sound_posterior,
    validate_beliefs,
)
from bayesbias.evidence import OMEGA, ModelError, ModelOfEvidence, conditional_probability
from conftest import load
from strategies import evidence_with_conforming

F = Fraction


def rows_of(m):
    return [(w.state, w.label, w.type, m.q[w]) for w in m.worlds]


def replace_q(m, **masses):
    """Copy of m with q changed for worlds keyed ``state_label``."""
    rows = [(s, l, t, masses.get(f"{s}_{l}", q)) for s, l, t, q in rows_of(m)]
    return ModelOfBeliefs.from_table(m.base, rows)


def test_beta_and_alpha(ex2):
    assert {(w.state, w.label) for w in beta_event(ex2, "Empty")} == {("e", "Empty"), ("h", "Empty"), ("f", "Empty")}
    assert beta_event(ex2, OMEGA) == frozenset(ex2.worlds)
    assert {w.label for w in alpha_embed(ex2, ["h"])} == {"Empty", "F"}
    assert alpha_embed(ex2, []) == frozenset()
    with pytest.raises(ModelError):
        beta_event(ex2, "Nope")
    with pytest.raises(ModelError):
        alpha_embed(ex2, ["z"])


def test_two_type_model_valid(ex2):
    assert validate_beliefs(ex2) == []


def test_removing_a_type_breaks_onto(ex2):
    rows = [r for r in rows_of(ex2) if r[2] != "F"]
    rows = [(s, l, t, q * 2) for s, l, t, q in rows]
    clauses = {v.clause for v in validate_beliefs(ModelOfBeliefs.from_table(ex2.base, rows))}
    assert "type-onto" in clauses


def test_full_mass_type_breaks_type_mass(ex2):
    m = replace_q(ex2, e_Empty=F(1, 2), h_Empty=F(1, 2), h_F=F(0), f_F=F(0))
    clauses = {v.clause for v in validate_beliefs(m)}
    assert clauses == {"type-onto", "type-mass"}


def test_validation_clauses(ex2):
    assert {v.clause for v in validate_beliefs(replace_q(ex2, e_Empty=F(1, 5)))} == {"q-normalized"}
    neg = replace_q(ex2, e_F=F(-1, 10), f_F=F(2, 5))
    assert "q-nonnegative" in {v.clause for v in validate_beliefs(neg)}
    dup = ModelOfBeliefs.from_table(ex2.base, rows_of(ex2) + [("e", "Empty", "F", F(0))])
    assert "world-unique" in {v.clause for v in validate_beliefs(dup)}


def test_world_must_reference_known_names(ex2):
    with pytest.raises(ModelError):
        ModelOfBeliefs.from_table(ex2.base, [("z", "x", "F", F(1))])
    with pytest.raises(ModelError):
        ModelOfBeliefs.from_table(ex2.base, [("e", "x", OMEGA, F(1))])


def test_sound_posteriors(ex2):
    assert sound_posterior(ex2, ["e"], "Empty") == F(3, 5)
    assert sound_posterior(ex2, ["h"], "Empty") == F(2, 5)
    assert sound_posterior(ex2, ["h"], OMEGA) == F(2, 5)
    assert sound_posterior(ex2, ["f"], "F") == F(3, 5)


def test_bias_direction(ex1, ex2):
    assert sound_posterior(ex2, ["e"], "Empty") > conditional_probability(ex1, ["e"], "Empty")


def test_conformity_examples(ex1, ex2):
    assert check_conformity(ex2, ex1)
    t54 = load("beliefs_h_heavy.json")
    verdict = check_conformity(t54, ex1)
    assert not verdict
    assert verdict.reason.startswith("marginal of state")
    assert t54.mass(alpha_embed(t54, ["h"])) == F(4, 5)
    leaky = replace_q(ex2, e_Empty=F(1, 5), e_F=F(1, 10))
    verdict = check_conformity(leaky, ex1)
    assert not verdict and "beta(F)" in verdict.reason


def test_conformity_structure_mismatch(ex2):
    with pytest.raises(ModelError):
        check_conformity(ex2, load("example3.json"))


def test_justification_examples(ex1, ex2):
    verdict = check_justification(ex2, ex1)
    assert not verdict
    assert [(x.state, x.event, x.sound, x.heuristic) for x in verdict.mismatches] == [
        ("e", "Empty", F(3, 5), F(3, 7)),
        ("h", "Empty", F(2, 5), F(4, 7)),
        ("h", "F", F(2, 5), F(4, 7)),
        ("f", "F", F(3, 5), F(3, 7)),
    ]
    assert check_justification(load("example3_beliefs.json"), load("example3.json"))


def test_partition_is_justified():
    e = ModelOfEvidence(("a", "b"), {"a": F(1, 3), "b": F(2, 3)}, {"A": {"a"}, "B": {"b"}})
    m = ModelOfBeliefs.from_table(e.skeleton, [("a", "A", "A", F(1, 3)), ("b", "B", "B", F(2, 3))])
    assert check_justification(m, e)


def test_nonconforming_is_not_justified(ex1):
    verdict = check_justification(load("beliefs_h_heavy.json"), ex1)
    assert not verdict and verdict.reason.startswith("not conforming")


@settings(max_examples=150)
@given(evidence_with_conforming())
def test_type_decomposition(pair):
    e, m = pair
    assert check_conformity(m, e)
    for s in e.states:
        total = sum((m.mass(alpha_embed(m, [s]) & beta_event(m, b)) for b in e.events), F(0))
        assert total == m.mass(alpha_embed(m, [s])) == e.prior[s]


@settings(max_examples=150)
@given(evidence_with_conforming(), st.integers(0, 2**32 - 1))
def test_justification_equals_subset_check(pair, seed):
    e, m = pair
    rng = random.Random(seed)
    subsets = [[s for s in e.states if rng.random() < 0.5] for _ in range(12)] + [[s] for s in e.states]
    subset_ok = all(
        sound_posterior(m, a, b) == conditional_probability(e, a, b)
        for a in subsets for b in e.skeleton.refs
    )
    verdict = check_justification(m, e)
    assert bool(verdict) == subset_ok
    assert not verdict or check_conformity(m, e)
