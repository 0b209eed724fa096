"""Representation-axiom checks with an exhaustive cross-checking oracle.

Both checks scan projects in ascending id order: a violation witness is the
lowest-id project p together with the full set of voters who approve p yet
have no qualifying approved project funded. Group-size thresholds compare
len(group) * limit >= n in exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Budget, ContractError, Instance, ValidationError, is_feasible

UJR = "ujr"
STRONG_BJR = "strong-bjr"
AXIOMS = (UJR, STRONG_BJR)


@dataclass(frozen=True)
class AxiomReport:
    """Verdict for one axiom on one (instance, budget) pair.

    ``witness`` is None exactly when satisfied; otherwise it names a project
    and the deprived voter group certifying the violation.
    """

    axiom: str
    satisfied: bool
    witness: tuple[int, frozenset[int]] | None = None

    def to_dict(self) -> dict:
        data: dict = {"axiom": self.axiom, "satisfied": self.satisfied, "witness": None}
        if self.witness is not None:
            project, voters = self.witness
            data["witness"] = {"project": project, "voters": sorted(voters)}
        return data


def _check_axiom_name(axiom: str) -> None:
    if axiom not in AXIOMS:
        raise ValidationError(f"unknown axiom {axiom!r}; expected one of {AXIOMS}")


def _represented_flags(instance: Instance, budget: Budget, axiom: str) -> list[bool]:
    """Per voter: does some approved funded project count as representation?

    Under the stronger axiom only positive-cost funded projects count.
    """
    if axiom == STRONG_BJR:
        funded = frozenset(p for p in budget.selected if instance.costs[p] > 0)
    else:
        funded = budget.selected
    return [not funded.isdisjoint(ballot) for ballot in instance.ballots]


def _scan(instance: Instance, budget: Budget, axiom: str) -> AxiomReport:
    if not is_feasible(instance, budget):
        raise ContractError("axiom checks require a feasible budget")
    flags = _represented_flags(instance, budget, axiom)
    n, limit = instance.n, instance.limit
    for p in range(instance.m):
        group = frozenset(v for v in instance.approvers[p] if not flags[v])
        if len(group) * limit >= n:
            return AxiomReport(axiom, False, (p, group))
    return AxiomReport(axiom, True)


def check_ujr(instance: Instance, budget: Budget) -> AxiomReport:
    """Every large-enough cohesive group must see some member's approval funded."""
    return _scan(instance, budget, UJR)


def check_strong_bjr(instance: Instance, budget: Budget) -> AxiomReport:
    """As check_ujr, but only positive-cost funded projects represent a voter."""
    return _scan(instance, budget, STRONG_BJR)


def check_axiom(instance: Instance, budget: Budget, axiom: str) -> AxiomReport:
    _check_axiom_name(axiom)
    return _scan(instance, budget, axiom)


def naive_axiom_oracle(
    instance: Instance, budget: Budget, axiom: str, max_voters: int = 16
) -> AxiomReport:
    """Literal quantifier-over-groups check, for cross-validation in tests.

    Enumerates voter subsets in increasing size, skipping sizes too small to
    clear the threshold. Subsets containing a represented voter can never
    violate, so only deprived voters are combined; the verdict is unchanged.
    """
    _check_axiom_name(axiom)
    if not is_feasible(instance, budget):
        raise ContractError("axiom checks require a feasible budget")
    if instance.n > max_voters:
        raise ContractError(
            f"oracle capped at {max_voters} voters, instance has {instance.n}"
        )
    flags = _represented_flags(instance, budget, axiom)
    deprived = [v for v in range(instance.n) if not flags[v]]
    n, limit = instance.n, instance.limit
    min_size = -(-n // limit)
    for size in range(min_size, len(deprived) + 1):
        for group in itertools.combinations(deprived, size):
            common = frozenset.intersection(*(instance.ballots[v] for v in group))
            if common:
                return AxiomReport(axiom, False, (min(common), frozenset(group)))
    return AxiomReport(axiom, True)


def verify_witness(instance: Instance, budget: Budget, report: AxiomReport) -> bool:
    """Independently re-check a report's witness against the definition."""
    if report.satisfied != (report.witness is None):
        return False
    if report.witness is None:
        return True
    project, group = report.witness
    if not group:
        return False
    if not all(project in instance.ballots[v] for v in group):
        return False
    if len(group) * instance.limit < instance.n:
        return False
    flags = _represented_flags(instance, budget, report.axiom)
    return not any(flags[v] for v in group)
