"""Shared fixtures: the five hand-traced elections plus random-instance helpers."""

from __future__ import annotations

import random

import pytest

from pbelect.core import Instance, make_budget, make_instance


@pytest.fixture
def i_a() -> Instance:
    """4 voters approving {p0},{p0},{p1},{p2}; unit costs; limit 2."""
    return make_instance([1, 1, 1], [{0}, {0}, {1}, {2}], 2)


@pytest.fixture
def i_b() -> Instance:
    """3 voters approving {p0},{p0},{p1,p2}; costs 5,3,3; limit 6."""
    return make_instance([5, 3, 3], [{0}, {0}, {1, 2}], 6)


@pytest.fixture
def i_c() -> Instance:
    """4 voters approving {p0},{p0},{p1},{p1}; unit costs; limit 2."""
    return make_instance([1, 1], [{0}, {0}, {1}, {1}], 2)


@pytest.fixture
def i_d() -> Instance:
    """Ranked variant of i_a: full rankings for an STV committee of 2."""
    return make_instance(
        [1, 1, 1],
        [{0}, {0}, {1}, {2}],
        2,
        rankings=[(0, 1, 2), (0, 2, 1), (1, 0, 2), (2, 1, 0)],
    )


@pytest.fixture
def i_e() -> Instance:
    """4 voters approving {p0},{p0},{p1},{p1}; 4 unit-cost projects; limit 2."""
    return make_instance([1, 1, 1, 1], [{0}, {0}, {1}, {1}], 2)


def random_unit_instance(
    rng: random.Random,
    max_n: int = 12,
    max_m: int = 6,
    with_rankings: bool = False,
) -> Instance:
    """Small random unit-cost instance; limit in [1, m]."""
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    limit = rng.randint(1, m)
    rankings = None
    if with_rankings:
        rankings = [tuple(rng.sample(range(m), m)) for _ in range(n)]
        ballots = [frozenset(r[: rng.randint(1, m)]) for r in rankings]
    else:
        ballots = [
            frozenset(rng.sample(range(m), rng.randint(1, m))) for _ in range(n)
        ]
    return make_instance([1] * m, ballots, limit, rankings=rankings)


def random_costed_instance(
    rng: random.Random, max_n: int = 12, max_m: int = 6, max_cost: int = 8
) -> Instance:
    """Small random instance with varied positive costs and a coherent limit."""
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    costs = [rng.randint(1, max_cost) for _ in range(m)]
    limit = rng.randint(max(costs), sum(costs))
    ballots = [frozenset(rng.sample(range(m), rng.randint(1, m))) for _ in range(n)]
    return make_instance(costs, ballots, limit)


def random_feasible_budget(rng: random.Random, instance: Instance):
    """A random feasible (possibly empty, possibly non-exhaustive) budget."""
    order = list(range(instance.m))
    rng.shuffle(order)
    chosen: set[int] = set()
    spent = 0
    for p in order:
        if rng.random() < 0.5 and spent + instance.costs[p] <= instance.limit:
            chosen.add(p)
            spent += instance.costs[p]
    return make_budget(instance, chosen)
