import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bayesbias.balance import BalancingFunction, extract_balancing, find_balancing, verify_balancing
from bayesbias.beliefs import ModelOfBeliefs, check_justification
from bayesbias.constructions import build_justifying
from bayesbias.evidence import ModelError, ModelOfEvidence
from bayesbias.sampling import random_conforming, random_evidence
from conftest import load
from strategies import evidence_models, grid_points, integer_grid

F = Fraction


def theta_oracle(e, max_denominator=12):
    """Brute force over theta with every value in (0, 1] and denominator <= max_denominator."""
    values, scale = integer_grid(max_denominator, 0, 1)
    values = values[values > 0]
    names = list(e.events)
    rows = [np.array([s in e.events[b] for b in names]) for s in e.states if e.prior[s] > 0]
    rest = grid_points(values, len(names) - 1) if len(names) > 1 else np.zeros((1, 0), dtype=np.int64)
    for first in values:
        pts = np.hstack([np.full((len(rest), 1), first), rest])
        ok = np.ones(len(pts), dtype=bool)
        for row in rows:
            ok &= pts[:, row].sum(axis=1) == scale
        if ok.any():
            return True
    return False


def test_examples(ex1, ex3, theta_half, partition):
    assert find_balancing(ex1) is None
    theta = find_balancing(ex3)
    assert theta is not None and verify_balancing(ex3, theta)
    assert verify_balancing(ex3, theta_half)
    assert not verify_balancing(ex3, BalancingFunction({b: F(1, 3) for b in ex3.events}))
    assert find_balancing(partition).theta == {b: 1 for b in partition.events}
    assert verify_balancing(partition, BalancingFunction({b: F(1) for b in partition.events}))


def test_verify_rejects_out_of_range(partition, ex3):
    assert not verify_balancing(partition, BalancingFunction({"X": F(1), "Y": F(0)}))
    assert not verify_balancing(ex3, BalancingFunction({"B0": F(3, 2), "B1": F(-1, 2), "B2": F(1, 2)}))
    with pytest.raises(ModelError):
        verify_balancing(ex3, BalancingFunction({"B0": F(1, 2)}))


def test_null_states_are_exempt():
    e = load("example3.json")
    # with state "0" null, only states 1 and 2 constrain theta
    e0 = ModelOfEvidence(e.states, {"0": F(0), "1": F(1, 2), "2": F(1, 2)}, e.events)
    t = BalancingFunction({"B0": F(1, 4), "B1": F(3, 4), "B2": F(1, 4)})
    assert verify_balancing(e0, t) and not verify_balancing(e, t)


def test_extract(ex1, ex2, ex3, theta_half, partition):
    assert extract_balancing(build_justifying(ex3, theta_half), ex3) == theta_half
    m = ModelOfBeliefs.from_table(partition.skeleton, [
        ("a", "X", "X", F(1, 2)), ("b", "Y", "Y", F(1, 4)), ("c", "Y", "Y", F(1, 4))])
    assert extract_balancing(m, partition).theta == {"X": 1, "Y": 1}
    with pytest.raises(ModelError):
        extract_balancing(ex2, ex1)


@settings(max_examples=60, deadline=None)
@given(evidence_models(max_states=4, max_events=4))
def test_matches_grid_oracle(e):
    theta = find_balancing(e)
    assert (theta is not None) == theta_oracle(e)
    if theta is not None:
        assert verify_balancing(e, theta)
        assert all(0 < v <= 1 for v in theta.theta.values())


@settings(max_examples=100, deadline=None)
@given(evidence_models())
def test_round_trip(e):
    theta = find_balancing(e)
    if theta is not None:
        assert extract_balancing(build_justifying(e, theta), e) == theta


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_any_justifying_model_implies_balanced(seed):
    rng = random.Random(seed)
    e = random_evidence(rng)
    if any(check_justification(random_conforming(rng, e), e) for _ in range(4)):
        assert find_balancing(e) is not None


def test_deterministic(ex3):
    assert find_balancing(ex3) == find_balancing(load("example3.json"))
