"""Exhaustive enumeration helpers shared by the solvers and the PO check.

Canonical enumeration order: assignments are generated as base-n counters
over the item indices, item 0 being the most significant digit. Ties in
any exhaustive argmax are broken toward the first optimum in this order,
which makes every solver deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Iterator

from .errors import SearchSpaceTooLarge
from .model import AdditiveValuation, Instance

#: Default cap on the number of allocations an exhaustive operation may visit.
DEFAULT_MAX_SPACE = 10_000_000


def search_space_size(n: int, m: int) -> int:
    return n**m


def guard_search_space(n: int, m: int, max_space: int | None = None) -> int:
    """Return n^m, raising :class:`SearchSpaceTooLarge` above the cap."""
    limit = DEFAULT_MAX_SPACE if max_space is None else max_space
    size = search_space_size(n, m)
    if size > limit:
        raise SearchSpaceTooLarge(size, limit)
    return size


def assignments(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """All n^m assignments in canonical order."""
    return product(range(n), repeat=m)


def bundle_masks(assignment: tuple[int, ...], n: int) -> list[int]:
    masks = [0] * n
    for j, agent in enumerate(assignment):
        masks[agent] |= 1 << j
    return masks


def assignment_at(n: int, m: int, index: int) -> tuple[int, ...]:
    """The assignment at a given position of the canonical enumeration."""
    digits = [0] * m
    for j in range(m - 1, -1, -1):
        index, digits[j] = divmod(index, n)
    return tuple(digits)


@lru_cache(maxsize=32)
def exact_value_tables(inst: Instance) -> tuple[tuple[Fraction, ...], ...]:
    """Per-agent tables of all 2^m exact bundle values."""
    m = inst.m
    if isinstance(inst.valuation, AdditiveValuation):
        tables = []
        for row in inst.valuation.matrix:
            table = [Fraction(0)] * (1 << m)
            for mask in range(1, 1 << m):
                low = mask & -mask
                table[mask] = table[mask ^ low] + row[low.bit_length() - 1]
            tables.append(tuple(table))
        return tuple(tables)
    shared = tuple(inst.valuation.table)
    return tuple([shared] * inst.agents)


@lru_cache(maxsize=32)
def scaled_value_tables(inst: Instance) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Integer bundle-value tables under one common positive scale.

    Every exact value is multiplied by the least common multiple of all
    denominators in the instance, so comparisons between any two scaled
    values, including across agents, agree with the exact comparisons.
    Returns (tables, scale).
    """
    exact = exact_value_tables(inst)
    if isinstance(inst.valuation, AdditiveValuation):
        denominators = [
            entry.denominator for row in inst.valuation.matrix for entry in row
        ]
    else:
        denominators = [entry.denominator for entry in inst.valuation.table]
    scale = lcm(*denominators) if denominators else 1
    tables = tuple(
        tuple(int(entry * scale) for entry in table) for table in exact
    )
    return tables, scale
