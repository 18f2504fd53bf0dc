"""Exact fairness checks, the envy graph, and envy-cycle elimination.

Every check returns a :class:`CheckResult` whose witness, when the check
fails, is concrete enough to re-verify the violation directly. Witnesses
always report the lexicographically smallest violating tuple, scanning
agents, then counterpart agents, then items in ascending index order.

Conventions for mixed goods and chores, with G_i and C_i the goods and
chores of agent i from :func:`fairdiv.model.classify_items`:

* i envies j iff v_i(A_i) < v_i(A_j).
* EFX: every envious pair (i, j) must satisfy v_i(A_i) >= v_i(A_j - {g})
  for all goods g in A_j owned by j, and v_i(A_i) >= v_i(A_j + {c}) for
  all chores c in A_i. An envious pair with no goods in A_j and no chores
  in A_i fails outright.
* EF1 is the existential weakening: one such adjustment must succeed.
* PROP: v_i(A_i) >= v_i(M) / n for every agent.
* PROP1: the PROP bound must hold after adding some unowned item (any
  item, regardless of its sign for i) or removing some owned item.
* PO: no allocation weakly improves every agent and strictly improves one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .enumeration import assignments, bundle_masks, guard_search_space, scaled_value_tables
from .errors import SearchSpaceTooLarge
from .model import Allocation, Bundle, Instance, classify_items, format_value, value

GOOD_REMOVAL = "good-removal"
CHORE_COPY = "chore-copy"
NO_ADJUSTMENT = "no-adjustment"

#: Canonical notion order used by reports and the command line.
NOTIONS = ("ef", "ef1", "efx", "prop", "prop1", "po")


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class EnvyWitness:
    """Agent i strictly prefers agent j's bundle."""

    i: int
    j: int
    own: Fraction
    other: Fraction

    def as_dict(self, inst: Instance | None = None) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "own": format_value(self.own),
            "other": format_value(self.other),
        }


@dataclass(frozen=True)
class EfxWitness:
    """A single-item adjustment that leaves agent i still envious.

    ``side`` tells which adjustment failed: removing the good ``item``
    from j's bundle, or copying the chore ``item`` from i's bundle onto
    j's. ``adjusted`` is the value of j's adjusted bundle to i. An envious
    pair with no adjustment available carries item None and side
    "no-adjustment".
    """

    i: int
    j: int
    item: Optional[int]
    side: str
    own: Fraction
    adjusted: Fraction

    def as_dict(self, inst: Instance | None = None) -> dict:
        item = self.item
        if inst is not None and item is not None:
            item = inst.items[item]
        return {
            "i": self.i,
            "j": self.j,
            "item": item,
            "side": self.side,
            "own": format_value(self.own),
            "adjusted": format_value(self.adjusted),
        }


@dataclass(frozen=True)
class Ef1Witness:
    """No single-item adjustment frees agent i of envy toward j.

    ``best_target`` is the most favourable adjusted value of j's bundle
    over all allowed adjustments (None when the pair admits none).
    """

    i: int
    j: int
    own: Fraction
    other: Fraction
    best_target: Optional[Fraction]

    def as_dict(self, inst: Instance | None = None) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "own": format_value(self.own),
            "other": format_value(self.other),
            "best_target": None
            if self.best_target is None
            else format_value(self.best_target),
        }


@dataclass(frozen=True)
class PropWitness:
    """Agent's bundle value falls short of the proportional share."""

    agent: int
    value: Fraction
    threshold: Fraction

    def as_dict(self, inst: Instance | None = None) -> dict:
        return {
            "agent": self.agent,
            "value": format_value(self.value),
            "threshold": format_value(self.threshold),
        }


@dataclass(frozen=True)
class Prop1Witness:
    """Even the best single-item adjustment misses the proportional share.

    ``best_adjusted`` is the best bundle value agent reaches by leaving
    the bundle alone, adding one unowned item, or removing one owned item.
    """

    agent: int
    value: Fraction
    best_adjusted: Fraction
    threshold: Fraction

    def as_dict(self, inst: Instance | None = None) -> dict:
        return {
            "agent": self.agent,
            "value": format_value(self.value),
            "best_adjusted": format_value(self.best_adjusted),
            "threshold": format_value(self.threshold),
        }


@dataclass(frozen=True)
class PoWitness:
    """An allocation that weakly improves everyone and strictly improves
    at least one agent."""

    improvement: Allocation

    def as_dict(self, inst: Instance | None = None) -> dict:
        if inst is None:
            return {"improvement": list(self.improvement.assignment)}
        return {
            "improvement": [
                list(inst.bundle_names(mask))
                for mask in self.improvement.bundles()
            ]
        }


@dataclass(frozen=True)
class GuardWitness:
    """A check was skipped because its search space exceeds the cap."""

    size: int
    limit: int

    def as_dict(self, inst: Instance | None = None) -> dict:
        return {"search_space": self.size, "limit": self.limit}


@dataclass(frozen=True)
class CheckResult:
    verdict: Verdict
    witness: object = None

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS


def envies(inst: Instance, alloc: Allocation, i: int, j: int) -> bool:
    """True iff agent i strictly prefers agent j's bundle to her own."""
    bundles = alloc.bundles()
    return value(inst, i, bundles[i]) < value(inst, i, bundles[j])


def check_EF(inst: Instance, alloc: Allocation) -> CheckResult:
    """Envy-freeness: no agent strictly prefers another agent's bundle."""
    bundles = alloc.bundles()
    for i in range(inst.agents):
        own = value(inst, i, bundles[i])
        for j in range(inst.agents):
            if i == j:
                continue
            other = value(inst, i, bundles[j])
            if own < other:
                return CheckResult(Verdict.FAILS, EnvyWitness(i, j, own, other))
    return CheckResult(Verdict.HOLDS)


def _adjusted_targets(inst, cls, bundles, i, j):
    """Adjusted values of j's bundle for i, per single-item adjustment.

    Yields (item, side, adjusted value) for removing each of j's goods
    and for copying each of i's chores onto j's bundle, in ascending item
    order.
    """
    removable = bundles[j] & cls.goods[i]
    copyable = bundles[i] & cls.chores[i]
    for item in range(inst.m):
        bit = 1 << item
        if removable & bit:
            yield item, GOOD_REMOVAL, value(inst, i, bundles[j] & ~bit)
        elif copyable & bit:
            yield item, CHORE_COPY, value(inst, i, bundles[j] | bit)


def check_EFX(inst: Instance, alloc: Allocation) -> CheckResult:
    """Envy-freeness up to any item, in the mixed goods-and-chores sense.

    Every envious pair must survive every allowed single-item adjustment:
    removing any good from the envied bundle, and copying any owned chore
    onto it. An envious pair with no adjustment available fails.
    """
    cls = classify_items(inst)
    bundles = alloc.bundles()
    for i in range(inst.agents):
        own = value(inst, i, bundles[i])
        for j in range(inst.agents):
            if i == j:
                continue
            other = value(inst, i, bundles[j])
            if own >= other:
                continue
            vacuous = True
            for item, side, adjusted in _adjusted_targets(inst, cls, bundles, i, j):
                vacuous = False
                if own < adjusted:
                    return CheckResult(
                        Verdict.FAILS, EfxWitness(i, j, item, side, own, adjusted)
                    )
            if vacuous:
                return CheckResult(
                    Verdict.FAILS, EfxWitness(i, j, None, NO_ADJUSTMENT, own, other)
                )
    return CheckResult(Verdict.HOLDS)


def check_EF1(inst: Instance, alloc: Allocation) -> CheckResult:
    """Envy-freeness up to one item: for every envious pair some single
    adjustment (one good removed from the envied bundle, or one owned
    chore copied onto it) must cancel the envy."""
    cls = classify_items(inst)
    bundles = alloc.bundles()
    for i in range(inst.agents):
        own = value(inst, i, bundles[i])
        for j in range(inst.agents):
            if i == j:
                continue
            other = value(inst, i, bundles[j])
            if own >= other:
                continue
            best = None
            for _item, _side, adjusted in _adjusted_targets(inst, cls, bundles, i, j):
                if best is None or adjusted < best:
                    best = adjusted
            if best is None or own < best:
                return CheckResult(
                    Verdict.FAILS, Ef1Witness(i, j, own, other, best)
                )
    return CheckResult(Verdict.HOLDS)


def check_PROP(inst: Instance, alloc: Allocation) -> CheckResult:
    """Proportionality: every agent values her bundle at least at
    v_i(M) / n."""
    bundles = alloc.bundles()
    for i in range(inst.agents):
        threshold = value(inst, i, inst.full_mask) / inst.agents
        own = value(inst, i, bundles[i])
        if own < threshold:
            return CheckResult(Verdict.FAILS, PropWitness(i, own, threshold))
    return CheckResult(Verdict.HOLDS)


def check_PROP1(inst: Instance, alloc: Allocation) -> CheckResult:
    """Proportionality up to one item: each agent must reach her
    proportional share as allocated, after adding one unowned item, or
    after removing one owned item. The added item may be any unowned
    item; the quantifier is not restricted to goods."""
    bundles = alloc.bundles()
    for i in range(inst.agents):
        threshold = value(inst, i, inst.full_mask) / inst.agents
        mask = bundles[i]
        own = value(inst, i, mask)
        best = own
        for item in range(inst.m):
            bit = 1 << item
            adjusted = value(inst, i, mask ^ bit)
            if adjusted > best:
                best = adjusted
        if best < threshold:
            return CheckResult(Verdict.FAILS, Prop1Witness(i, own, best, threshold))
    return CheckResult(Verdict.HOLDS)


def check_PO(inst: Instance, alloc: Allocation, max_space: int | None = None) -> CheckResult:
    """Pareto optimality by exhaustive search for an improvement.

    Scans all n^m allocations in canonical order and reports the first
    one that makes every agent weakly better off and someone strictly
    better off. Bounded by the search-space cap.
    """
    size = guard_search_space(inst.agents, inst.m, max_space)
    tables, _scale = scaled_value_tables(inst)
    base = [tables[i][mask] for i, mask in enumerate(alloc.bundles())]
    n = inst.agents
    for candidate in assignments(n, inst.m):
        masks = bundle_masks(candidate, n)
        improved = False
        for i in range(n):
            got = tables[i][masks[i]]
            if got < base[i]:
                improved = False
                break
            if got > base[i]:
                improved = True
        if improved:
            return CheckResult(
                Verdict.FAILS, PoWitness(Allocation(n, tuple(candidate)))
            )
    return CheckResult(Verdict.HOLDS)


_CHECKS = {
    "ef": check_EF,
    "ef1": check_EF1,
    "efx": check_EFX,
    "prop": check_PROP,
    "prop1": check_PROP1,
    "po": check_PO,
}


@dataclass(frozen=True)
class FairnessReport:
    """Verdicts for a set of notions on one allocation, in request order."""

    results: tuple[tuple[str, CheckResult], ...]

    def result(self, notion: str) -> CheckResult:
        for name, res in self.results:
            if name == notion:
                return res
        raise KeyError(notion)

    @property
    def all_hold(self) -> bool:
        return all(res.verdict is Verdict.HOLDS for _, res in self.results)

    def as_list(self, inst: Instance | None = None) -> list[dict]:
        out = []
        for name, res in self.results:
            if res.verdict is Verdict.NOT_APPLICABLE:
                holds = None
            else:
                holds = res.verdict is Verdict.HOLDS
            witness = None
            if res.witness is not None:
                witness = res.witness.as_dict(inst)
            out.append({"notion": name, "holds": holds, "witness": witness})
        return out


def audit(
    inst: Instance,
    alloc: Allocation,
    notions=NOTIONS,
    max_space: int | None = None,
) -> FairnessReport:
    """Run the requested checks and collect one verdict per notion.

    A check whose search space exceeds the cap is reported as
    not-applicable rather than aborting the whole audit.
    """
    results = []
    for notion in notions:
        try:
            checker = _CHECKS[notion]
        except KeyError:
            raise ValueError(f"unknown notion {notion!r}") from None
        try:
            if notion == "po":
                res = checker(inst, alloc, max_space)
            else:
                res = checker(inst, alloc)
        except SearchSpaceTooLarge as exc:
            res = CheckResult(
                Verdict.NOT_APPLICABLE, GuardWitness(exc.size, exc.limit)
            )
        results.append((notion, res))
    return FairnessReport(tuple(results))


@dataclass(frozen=True)
class EnvyGraph:
    """Directed envy relation of an allocation: edge (u, w) means agent u
    strictly prefers agent w's bundle. Edges are sorted by (source,
    target)."""

    agents: int
    edges: tuple[tuple[int, int], ...]

    def out_neighbours(self, agent: int) -> tuple[int, ...]:
        return tuple(w for u, w in self.edges if u == agent)


def build_envy_graph(inst: Instance, alloc: Allocation) -> EnvyGraph:
    bundles = alloc.bundles()
    edges = []
    for u in range(inst.agents):
        own = value(inst, u, bundles[u])
        for w in range(inst.agents):
            if u != w and own < value(inst, u, bundles[w]):
                edges.append((u, w))
    return EnvyGraph(inst.agents, tuple(edges))


def _envy_adjacency(inst: Instance, masks: list[Bundle]) -> list[list[int]]:
    adjacency = []
    for u in range(inst.agents):
        own = value(inst, u, masks[u])
        adjacency.append(
            [w for w in range(inst.agents) if u != w and own < value(inst, u, masks[w])]
        )
    return adjacency


def _first_cycle(n: int, adjacency: list[list[int]]) -> list[int] | None:
    """First cycle met by a depth-first walk that starts from the lowest
    agent index and explores outgoing edges in ascending target order.
    Returns the cycle as an agent list, or None if the graph is acyclic."""
    color = [0] * n  # 0 unvisited, 1 on the current path, 2 done
    for start in range(n):
        if color[start] or not adjacency[start]:
            continue
        color[start] = 1
        path = [start]
        stack = [(start, iter(adjacency[start]))]
        while stack:
            _node, edge_iter = stack[-1]
            descended = False
            for target in edge_iter:
                if color[target] == 1:
                    return path[path.index(target):]
                if color[target] == 0:
                    color[target] = 1
                    path.append(target)
                    stack.append((target, iter(adjacency[target])))
                    descended = True
                    break
            if not descended:
                color[path.pop()] = 2
                stack.pop()
    return None


def eliminate_envy_cycles(inst: Instance, alloc: Allocation) -> Allocation:
    """Rotate bundles along envy cycles until the envy graph is acyclic.

    Each rotation hands every agent on the cycle the bundle she envies,
    strictly raising her value and leaving everyone else untouched, so
    the total utility strictly increases and the loop terminates. The
    result's envy graph is acyclic, hence some agent envies nobody.
    """
    masks = list(alloc.bundles())
    while True:
        cycle = _first_cycle(inst.agents, _envy_adjacency(inst, masks))
        if cycle is None:
            return Allocation.from_bundles(inst.agents, masks, inst.m)
        previous = list(masks)
        k = len(cycle)
        for idx, agent in enumerate(cycle):
            masks[agent] = previous[cycle[(idx + 1) % k]]
