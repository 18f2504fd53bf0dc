"""Generalized leximin: objective tuples, the comparison operator, and an
exhaustive solver.

An objective spec maps (agent, bundle) to a tuple of exact values. An
allocation A precedes B when, after sorting each allocation's agents by
increasing objective tuple, the first position at which the two sorted
tuple sequences differ is smaller in A. This is a strict weak order, and
a leximin-optimal allocation is a maximal element of it.

Built-in specs, with v the agent's value, G/C her goods and chores:

* utility:            f(S) = (v(S),)
* utility-goods:      f(S) = (v(S), |S  intersect  G|)
* utility-goods-chores: f(S) = (v(S), |S intersect G|, -|S intersect C|)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .enumeration import (
    assignments,
    bundle_masks,
    exact_value_tables,
    guard_search_space,
    scaled_value_tables,
)
from .model import Allocation, Bundle, Instance, SolveResult, classify_items

#: Permutation of agents sorting their objective tuples in nondecreasing
#: order, ties broken by ascending agent index.
AgentOrdering = tuple[int, ...]


@dataclass(frozen=True)
class ObjectiveSpec:
    """A named family of per-agent objective tuples.

    ``custom`` carries a user function (inst, agent, bundle) -> tuple for
    the custom kind; the built-in kinds ignore it.
    """

    kind: str
    custom: Optional[Callable[[Instance, int, Bundle], tuple]] = None

    UTILITY = "utility"
    UTILITY_GOODS = "utility-goods"
    UTILITY_GOODS_CHORES = "utility-goods-chores"
    CUSTOM = "custom"

    def __post_init__(self):
        kinds = (self.UTILITY, self.UTILITY_GOODS, self.UTILITY_GOODS_CHORES, self.CUSTOM)
        if self.kind not in kinds:
            raise ValueError(f"unknown objective kind {self.kind!r}")
        if (self.kind == self.CUSTOM) != (self.custom is not None):
            raise ValueError("custom objectives, and only them, need a function")


UTILITY = ObjectiveSpec(ObjectiveSpec.UTILITY)
UTILITY_GOODS = ObjectiveSpec(ObjectiveSpec.UTILITY_GOODS)
UTILITY_GOODS_CHORES = ObjectiveSpec(ObjectiveSpec.UTILITY_GOODS_CHORES)

#: Solver names accepted on the command line, mapped to objective specs.
SPEC_NAMES = {
    "leximin": UTILITY,
    "leximin++": UTILITY_GOODS,
    "leximin-gc": UTILITY_GOODS_CHORES,
}


def objective(inst: Instance, spec: ObjectiveSpec, agent: int, bundle: Bundle) -> tuple:
    """The objective tuple of one agent for one bundle, exact."""
    if spec.kind == ObjectiveSpec.CUSTOM:
        return tuple(spec.custom(inst, agent, bundle))
    val = exact_value_tables(inst)[agent][bundle]
    if spec.kind == ObjectiveSpec.UTILITY:
        return (val,)
    cls = classify_items(inst)
    goods_count = (bundle & cls.goods[agent]).bit_count()
    if spec.kind == ObjectiveSpec.UTILITY_GOODS:
        return (val, goods_count)
    chores_count = (bundle & cls.chores[agent]).bit_count()
    return (val, goods_count, -chores_count)


def agent_ordering(inst: Instance, spec: ObjectiveSpec, alloc: Allocation) -> AgentOrdering:
    """Agents sorted by increasing objective tuple, ties by agent index."""
    bundles = alloc.bundles()
    tuples = [objective(inst, spec, i, bundles[i]) for i in range(inst.agents)]
    return tuple(sorted(range(inst.agents), key=lambda i: (tuples[i], i)))


def sorted_objectives(inst: Instance, spec: ObjectiveSpec, alloc: Allocation) -> tuple:
    """The allocation's objective tuples in the agent ordering."""
    bundles = alloc.bundles()
    tuples = [objective(inst, spec, i, bundles[i]) for i in range(inst.agents)]
    return tuple(sorted(tuples))


def precedes(inst: Instance, spec: ObjectiveSpec, a: Allocation, b: Allocation) -> bool:
    """The leximin comparison: does allocation ``a`` rank strictly below
    ``b``?

    Sorts each allocation's agents by increasing objective tuple (ties by
    agent index) and scans the two orderings position by position; the
    first position whose tuples differ decides. Equal sorted sequences
    are incomparable, so the relation is a strict weak order.
    """
    bundles_a = a.bundles()
    bundles_b = b.bundles()
    tuples_a = [objective(inst, spec, i, bundles_a[i]) for i in range(inst.agents)]
    tuples_b = [objective(inst, spec, i, bundles_b[i]) for i in range(inst.agents)]
    order_a = sorted(range(inst.agents), key=lambda i: (tuples_a[i], i))
    order_b = sorted(range(inst.agents), key=lambda i: (tuples_b[i], i))
    for pos in range(inst.agents):
        fa = tuples_a[order_a[pos]]
        fb = tuples_b[order_b[pos]]
        if fa != fb:
            return fa < fb
    return False


def _solver_key_fn(inst: Instance, spec: ObjectiveSpec):
    """Key function assignment -> sorted objective-tuple sequence.

    For the built-in specs the value entry is an integer under one common
    positive scale, which preserves every comparison the exact tuples
    would make while keeping the enumeration loop cheap. Custom specs
    fall back to exact tuples.
    """
    n = inst.agents
    if spec.kind == ObjectiveSpec.CUSTOM:
        fn = spec.custom

        def key(assignment):
            masks = bundle_masks(assignment, n)
            return tuple(sorted(tuple(fn(inst, i, masks[i])) for i in range(n)))

        return key
    tables, _scale = scaled_value_tables(inst)
    if spec.kind == ObjectiveSpec.UTILITY:

        def key(assignment):
            masks = bundle_masks(assignment, n)
            return tuple(sorted((tables[i][masks[i]],) for i in range(n)))

        return key
    cls = classify_items(inst)
    goods = cls.goods
    chores = cls.chores
    if spec.kind == ObjectiveSpec.UTILITY_GOODS:

        def key(assignment):
            masks = bundle_masks(assignment, n)
            return tuple(
                sorted(
                    (tables[i][masks[i]], (masks[i] & goods[i]).bit_count())
                    for i in range(n)
                )
            )

        return key

    def key(assignment):
        masks = bundle_masks(assignment, n)
        return tuple(
            sorted(
                (
                    tables[i][masks[i]],
                    (masks[i] & goods[i]).bit_count(),
                    -(masks[i] & chores[i]).bit_count(),
                )
                for i in range(n)
            )
        )

    return key


def leximin_solve(
    inst: Instance,
    spec: ObjectiveSpec = UTILITY,
    max_space: int | None = None,
) -> SolveResult:
    """Exhaustively find a leximin-optimal allocation.

    Enumerates all n^m allocations in canonical order and keeps the
    maximum under the leximin comparison, breaking ties toward the first
    optimum met. ``tie_count`` reports how many allocations share the
    optimal sorted objective vector.
    """
    size = guard_search_space(inst.agents, inst.m, max_space)
    key_fn = _solver_key_fn(inst, spec)
    best_key = None
    best_assignment = None
    ties = 0
    for assignment in assignments(inst.agents, inst.m):
        key = key_fn(assignment)
        if best_key is None or key > best_key:
            best_key = key
            best_assignment = assignment
            ties = 1
        elif key == best_key:
            ties += 1
    allocation = Allocation(inst.agents, tuple(best_assignment))
    return SolveResult(
        allocation=allocation,
        objective_vector=sorted_objectives(inst, spec, allocation),
        score=None,
        tie_count=ties,
        search_space=size,
    )


def is_leximin_optimal(
    inst: Instance,
    spec: ObjectiveSpec,
    alloc: Allocation,
    max_space: int | None = None,
) -> bool:
    """True iff no allocation ranks strictly above ``alloc``."""
    guard_search_space(inst.agents, inst.m, max_space)
    key_fn = _solver_key_fn(inst, spec)
    own = key_fn(alloc.assignment)
    for assignment in assignments(inst.agents, inst.m):
        if key_fn(assignment) > own:
            return False
    return True
