"""Nash-welfare baselines for chores, on top of the aversion view.

Both solvers work on chores-only additive instances and score allocations
through each agent's aversion u_i = -v_i:

* modified Nash welfare multiplies the factors u_i(M) - u_i(A_i), the
  aversion each agent is spared;
* constrained Nash welfare restricts attention to Pareto-optimal
  allocations and multiplies the factors u_i(A_i) there.

Scores handle zero factors lexicographically: more nonzero factors beat
any product, and the product of an empty factor set is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from .enumeration import (
    assignment_at,
    assignments,
    bundle_masks,
    exact_value_tables,
    guard_search_space,
    scaled_value_tables,
)
from .errors import NotAdditive, NotChoresOnly
from .model import AdditiveValuation, Allocation, Instance, SolveResult


@dataclass(frozen=True, order=True)
class WelfareScore:
    """Degenerate-safe Nash product: the number of nonzero factors first,
    then the product of the nonzero factors (1 when there are none).
    Field order makes comparisons lexicographic."""

    nonzero_count: int
    product: Fraction


def _score(factors) -> WelfareScore:
    nonzero = [f for f in factors if f != 0]
    return WelfareScore(len(nonzero), Fraction(prod(nonzero, start=1)))


def _require_chores_only(inst: Instance) -> None:
    if not isinstance(inst.valuation, AdditiveValuation):
        raise NotAdditive("Nash-welfare baselines require an additive instance")
    for i, row in enumerate(inst.valuation.matrix):
        for j, entry in enumerate(row):
            if entry > 0:
                raise NotChoresOnly(i, j)


def nash_prime_factors(inst: Instance, alloc: Allocation) -> tuple[Fraction, ...]:
    """Per-agent spared aversion u_i(M) - u_i(A_i), which for chores-only
    values equals v_i(A_i) - v_i(M)."""
    _require_chores_only(inst)
    tables = exact_value_tables(inst)
    return tuple(
        tables[i][mask] - tables[i][inst.full_mask]
        for i, mask in enumerate(alloc.bundles())
    )


def modified_nash_welfare(inst: Instance, alloc: Allocation) -> WelfareScore:
    """The modified Nash product over spared aversions."""
    return _score(nash_prime_factors(inst, alloc))


def mnw_prime_solve(inst: Instance, max_space: int | None = None) -> SolveResult:
    """Exhaustively maximize the modified Nash welfare.

    Ties break toward the first optimum in canonical enumeration order.
    """
    _require_chores_only(inst)
    size = guard_search_space(inst.agents, inst.m, max_space)
    tables, _scale = scaled_value_tables(inst)
    n = inst.agents
    totals = [tables[i][inst.full_mask] for i in range(n)]
    best_score = None
    best_assignment = None
    ties = 0
    for assignment in assignments(n, inst.m):
        masks = bundle_masks(assignment, n)
        factors = [tables[i][masks[i]] - totals[i] for i in range(n)]
        nonzero = [f for f in factors if f]
        score = (len(nonzero), prod(nonzero, start=1))
        if best_score is None or score > best_score:
            best_score = score
            best_assignment = assignment
            ties = 1
        elif score == best_score:
            ties += 1
    allocation = Allocation(n, tuple(best_assignment))
    factors = nash_prime_factors(inst, allocation)
    return SolveResult(
        allocation=allocation,
        objective_vector=factors,
        score=_score(factors),
        tie_count=ties,
        search_space=size,
    )


def _pareto_front_mask(vectors: np.ndarray) -> np.ndarray:
    """Boolean mask of the non-dominated rows among distinct utility
    vectors.

    Rows are processed in batches of descending total. A dominator always
    has a strictly larger total, so every possible dominator of a row sits
    in the frontier accumulated from earlier batches or in the same batch
    with a strictly larger total; domination by any row, dominated or not,
    already disproves optimality, which keeps both checks one-pass.
    """
    count, width = vectors.shape
    totals = vectors.sum(axis=1)
    order = np.argsort(-totals, kind="stable")
    keep = np.zeros(count, dtype=bool)
    frontier = np.empty_like(vectors)
    fcount = 0
    for start in range(0, count, 512):
        batch_idx = order[start : start + 512]
        batch = vectors[batch_idx]
        batch_totals = totals[batch_idx]
        alive = np.ones(len(batch_idx), dtype=bool)
        if fcount:
            front = frontier[:fcount]
            for s in range(0, len(batch_idx), 256):
                chunk = batch[s : s + 256]
                dominated = front[None, :, 0] >= chunk[:, None, 0]
                for d in range(1, width):
                    dominated &= front[None, :, d] >= chunk[:, None, d]
                alive[s : s + 256] &= ~dominated.any(axis=1)
        if alive.any():
            rows = np.flatnonzero(alive)
            sub = batch[rows]
            sub_totals = batch_totals[rows]
            weakly = sub[None, :, 0] >= sub[:, None, 0]
            for d in range(1, width):
                weakly &= sub[None, :, d] >= sub[:, None, d]
            weakly &= sub_totals[None, :] > sub_totals[:, None]
            alive[rows[np.asarray(weakly).any(axis=1)]] = False
        surviving = batch[alive]
        frontier[fcount : fcount + len(surviving)] = surviving
        fcount += len(surviving)
        keep[batch_idx[alive]] = True
    return keep


def constrained_mnw_solve(inst: Instance, max_space: int | None = None) -> SolveResult:
    """Among Pareto-optimal allocations, exhaustively maximize the Nash
    product of aversions u_i(A_i).

    An allocation is Pareto-optimal exactly when its utility vector is
    not dominated by any achievable utility vector, so the search first
    collapses the space to distinct utility vectors, then filters them to
    the Pareto frontier, and finally maximizes the score there. Ties
    break toward the first optimum in canonical enumeration order.
    """
    _require_chores_only(inst)
    size = guard_search_space(inst.agents, inst.m, max_space)
    tables, _scale = scaled_value_tables(inst)
    n = inst.agents
    first_index: dict[tuple[int, ...], int] = {}
    vector_count: dict[tuple[int, ...], int] = {}
    for index, assignment in enumerate(assignments(n, inst.m)):
        masks = bundle_masks(assignment, n)
        vector = tuple(tables[i][masks[i]] for i in range(n))
        if vector not in first_index:
            first_index[vector] = index
            vector_count[vector] = 1
        else:
            vector_count[vector] += 1
    distinct = list(first_index)
    max_abs = max((abs(entry) for table in tables for entry in table), default=0)
    if (max_abs + 1) * n < 2**62:
        array = np.array(distinct, dtype=np.int64)
    else:
        array = np.array(distinct, dtype=object)
    front = _pareto_front_mask(array)
    best = None  # ((nonzero_count, product), -canonical_index) to maximize
    best_index = None
    ties = 0
    for vector, efficient in zip(distinct, front):
        if not efficient:
            continue
        factors = [-entry for entry in vector]
        nonzero = [f for f in factors if f]
        score = (len(nonzero), prod(nonzero, start=1))
        if best is None or score > best:
            best = score
            best_index = first_index[vector]
            ties = vector_count[vector]
        elif score == best:
            ties += vector_count[vector]
            best_index = min(best_index, first_index[vector])
    allocation = Allocation(n, assignment_at(n, inst.m, best_index))
    exact = exact_value_tables(inst)
    factors = tuple(
        -exact[i][mask] for i, mask in enumerate(allocation.bundles())
    )
    return SolveResult(
        allocation=allocation,
        objective_vector=factors,
        score=_score(factors),
        tie_count=ties,
        search_space=size,
    )
