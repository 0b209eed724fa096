"""Axiom checkers vs. the exhaustive oracle, plus the definitional properties."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbelect.axioms import (
    STRONG_BJR,
    UJR,
    check_axiom,
    check_strong_bjr,
    check_ujr,
    naive_axiom_oracle,
    verify_witness,
)
from pbelect.core import (
    ContractError,
    Instance,
    ValidationError,
    make_budget,
    make_instance,
)

from conftest import random_costed_instance, random_feasible_budget, random_unit_instance


# --- worked examples ---------------------------------------------------------------

def test_ujr_satisfied_when_everyone_covered():
    inst = make_instance([1, 1, 1], [{0}, {1}, {2}, {0, 2}], 3)
    report = check_ujr(inst, make_budget(inst, {0, 1, 2}))
    assert report.satisfied and report.witness is None


def test_ujr_violation_on_i_e(i_e):
    report = check_ujr(i_e, make_budget(i_e, {2, 3}))
    assert not report.satisfied
    assert report.witness == (0, frozenset({0, 1}))


def test_ujr_rational_threshold_just_below():
    # n=5, limit=2: a deprived pair fails 2*2 >= 5.
    inst = make_instance([1, 1, 1], [{0}, {0}, {1}, {1}, {2}], 2)
    report = check_ujr(inst, make_budget(inst, {1, 2}))
    assert report.satisfied


def test_strong_bjr_equals_ujr_with_positive_costs(i_e):
    budget = make_budget(i_e, {2, 3})
    strong = check_strong_bjr(i_e, budget)
    basic = check_ujr(i_e, budget)
    assert (strong.satisfied, strong.witness) == (basic.satisfied, basic.witness)


def test_strong_bjr_zero_cost_funding_does_not_count():
    inst = make_instance([1, 0], [{1}, {1}], 1, allow_zero_cost=True)
    budget = make_budget(inst, {1})
    assert check_ujr(inst, budget).satisfied
    report = check_strong_bjr(inst, budget)
    assert not report.satisfied
    assert report.witness == (1, frozenset({0, 1}))


def test_axiom_checks_reject_infeasible_budget(i_b):
    with pytest.raises(ContractError):
        check_ujr(i_b, make_budget(i_b, {0, 1}))


def test_check_axiom_rejects_unknown_name(i_a):
    with pytest.raises(ValidationError):
        check_axiom(i_a, make_budget(i_a, set()), "pjr")


# --- oracle ------------------------------------------------------------------------

def test_oracle_agrees_on_i_e(i_e):
    budget = make_budget(i_e, {2, 3})
    assert not naive_axiom_oracle(i_e, budget, UJR).satisfied


def test_oracle_satisfied_when_everyone_covered():
    inst = make_instance([1, 1, 1], [{0}, {1}, {2}, {0, 2}], 3)
    budget = make_budget(inst, {0, 1, 2})
    assert naive_axiom_oracle(inst, budget, UJR).satisfied


def test_oracle_singleton_voter_empty_budget():
    inst = make_instance([1], [{0}], 1)
    budget = make_budget(inst, set())
    assert not naive_axiom_oracle(inst, budget, UJR).satisfied
    assert not check_ujr(inst, budget).satisfied


def test_oracle_refuses_many_voters():
    inst = make_instance([1], [{0}] * 17, 1)
    with pytest.raises(ContractError):
        naive_axiom_oracle(inst, make_budget(inst, set()), UJR)


def _zero_cost_instance(rng: random.Random) -> Instance:
    m = rng.randint(2, 5)
    costs = [rng.randint(0, 3) for _ in range(m)]
    costs[rng.randrange(m)] = 0  # keep the zero-cost clause exercised
    limit = rng.randint(max(costs + [1]), sum(costs) + 2)
    n = rng.randint(1, 8)
    ballots = [frozenset(rng.sample(range(m), rng.randint(1, m))) for _ in range(n)]
    return make_instance(costs, ballots, limit, allow_zero_cost=True)


def test_checkers_match_oracle_on_random_batches():
    rng = random.Random(2024)
    for trial in range(300):
        if trial % 3 == 0:
            inst = random_unit_instance(rng)
        elif trial % 3 == 1:
            inst = random_costed_instance(rng)
        else:
            inst = _zero_cost_instance(rng)
        budget = random_feasible_budget(rng, inst)
        for axiom, checker in ((UJR, check_ujr), (STRONG_BJR, check_strong_bjr)):
            fast = checker(inst, budget)
            slow = naive_axiom_oracle(inst, budget, axiom)
            assert fast.satisfied == slow.satisfied, (inst, sorted(budget.selected))
            assert verify_witness(inst, budget, fast)
            assert verify_witness(inst, budget, slow)


# --- definitional properties ----------------------------------------------------------

@st.composite
def instance_and_budget(draw):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 8))
    costs = draw(st.lists(st.integers(1, 6), min_size=m, max_size=m))
    limit = draw(st.integers(max(costs), sum(costs) + 3))
    ballots = [
        draw(st.sets(st.integers(0, m - 1), min_size=1, max_size=m)) for _ in range(n)
    ]
    inst = make_instance(costs, ballots, limit)
    picks = draw(st.sets(st.integers(0, m - 1)))
    chosen: set[int] = set()
    spent = 0
    for p in sorted(picks):
        if spent + costs[p] <= limit:
            chosen.add(p)
            spent += costs[p]
    return inst, make_budget(inst, chosen)


@settings(max_examples=120, deadline=None)
@given(instance_and_budget())
def test_strong_bjr_implies_ujr(pair):
    inst, budget = pair
    if check_strong_bjr(inst, budget).satisfied:
        assert check_ujr(inst, budget).satisfied


@settings(max_examples=120, deadline=None)
@given(instance_and_budget(), st.integers(1, 10))
def test_raising_limit_never_repairs_a_violation(pair, extra):
    inst, budget = pair
    relaxed = make_instance(
        list(inst.costs),
        [set(b) for b in inst.ballots],
        inst.limit + extra,
        rankings=inst.rankings,
    )
    if not check_ujr(inst, budget).satisfied:
        assert not check_ujr(relaxed, budget).satisfied


@settings(max_examples=120, deadline=None)
@given(instance_and_budget())
def test_witnesses_reverify(pair):
    inst, budget = pair
    for checker in (check_ujr, check_strong_bjr):
        assert verify_witness(inst, budget, checker(inst, budget))
