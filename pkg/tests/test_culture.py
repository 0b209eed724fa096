"""Impartial-culture generation: seed derivation, model invariants, determinism."""

from __future__ import annotations

import pytest

from pbelect.core import ValidationError, prefix_coherent
from pbelect.culture import (
    BERNOULLI,
    BUDGET,
    CultureConfig,
    UNIFORM,
    culture_config_from_dict,
    culture_config_to_dict,
    derive_trial_seed,
    equal_valued_culture,
    general_case_culture,
    generate,
)


# --- seed derivation --------------------------------------------------------------

def test_derive_is_deterministic():
    assert derive_trial_seed(123, 456) == derive_trial_seed(123, 456)


def test_derive_no_collisions_over_a_million_trials():
    seen = {derive_trial_seed(99, i) for i in range(1_000_000)}
    assert len(seen) == 1_000_000


def test_derive_differs_across_seeds():
    for master in (0, 1, 17, 2**63, -5):
        for other in (2, 3, 10**9):
            assert derive_trial_seed(master, 4) != derive_trial_seed(other, 4)


def test_derive_is_64_bit():
    for i in range(100):
        assert 0 <= derive_trial_seed(2**70 + 3, i) < 2**64


# --- generation -------------------------------------------------------------------

def test_generate_is_pure_in_config_and_trial():
    config = equal_valued_culture(master_seed=9)
    assert generate(config, 41) == generate(config, 41)
    assert generate(config, 41) != generate(config, 42)


def test_unit_model_invariants():
    config = equal_valued_culture(master_seed=3)
    for trial in range(10_000):
        inst = generate(config, trial)
        assert set(inst.costs) == {1}
        assert 2 <= inst.limit <= inst.m - 1
        assert inst.rankings is not None
        assert prefix_coherent(inst)
        assert all(1 <= len(b) <= inst.m - 1 for b in inst.ballots)


def test_general_model_invariants():
    config = general_case_culture(master_seed=3)
    for trial in range(2000):
        inst = generate(config, trial)
        assert all(1 <= c <= 10 for c in inst.costs)
        assert inst.limit >= max(inst.costs)
        assert inst.limit <= max(max(inst.costs), (sum(inst.costs) + 1) // 2)


def test_budget_limit_fallback_to_max_cost():
    # With few projects and a wide cost spread, ceil(total/2) often falls
    # below the priciest project; the limit must then equal that cost.
    config = CultureConfig(
        n_range=(2, 4),
        m_range=(3, 3),
        cost_model=UNIFORM,
        cost_min=1,
        cost_max=30,
        limit_model=BUDGET,
        master_seed=8,
    )
    fallbacks = 0
    for trial in range(150):
        inst = generate(config, trial)
        assert inst.limit >= max(inst.costs)
        if (sum(inst.costs) + 1) // 2 < max(inst.costs):
            fallbacks += 1
            assert inst.limit == max(inst.costs)
    assert fallbacks > 0


def test_bernoulli_ballots_hit_target_rate():
    config = CultureConfig(
        n_range=(20, 40), m_range=(5, 20), ballot_model=BERNOULLI,
        approval_prob=0.5, master_seed=12,
    )
    pairs = approved = 0
    trial = 0
    while pairs < 10_000:
        inst = generate(config, trial)
        assert inst.rankings is None
        pairs += inst.n * inst.m
        approved += sum(len(b) for b in inst.ballots)
        trial += 1
    assert abs(approved / pairs - 0.5) < 0.02


# --- config validation ---------------------------------------------------------------

def test_rejects_small_m_range():
    with pytest.raises(ValidationError):
        CultureConfig(m_range=(2, 5))


def test_rejects_inverted_range():
    with pytest.raises(ValidationError):
        CultureConfig(n_range=(9, 4))


def test_rejects_committee_limit_with_uniform_costs():
    with pytest.raises(ValidationError):
        CultureConfig(cost_model=UNIFORM)


def test_rejects_bad_approval_prob():
    with pytest.raises(ValidationError):
        CultureConfig(ballot_model=BERNOULLI, approval_prob=0.0)


def test_rejects_bad_cost_bounds():
    with pytest.raises(ValidationError):
        CultureConfig(cost_model=UNIFORM, limit_model=BUDGET, cost_min=0)


def test_config_dict_round_trip():
    config = general_case_culture(master_seed=77)
    assert culture_config_from_dict(culture_config_to_dict(config)) == config


def test_config_dict_rejects_unknown_field():
    with pytest.raises(ValidationError):
        culture_config_from_dict({"n_rnage": [1, 2]})


def test_config_dict_rejects_bad_interval():
    with pytest.raises(ValidationError):
        culture_config_from_dict({"n_range": [1, 2, 3]})
