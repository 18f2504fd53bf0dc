"""JSON encoding and decoding for instances, allocations and reports.

All values travel as exact strings: a finite decimal where one exists,
otherwise "p/q". Serialization is deterministic, so equal objects always
produce byte-identical documents.
"""

from __future__ import annotations

import json

from .errors import InvalidAllocation, InvalidInstance
from .model import (
    AdditiveValuation,
    Allocation,
    GeneralIdenticalValuation,
    Instance,
    format_value,
    parse_value,
    validate_instance,
)

#: General valuation tables are dense, so the file format caps item count.
MAX_GENERAL_ITEMS = 16


def instance_to_dict(inst: Instance) -> dict:
    if isinstance(inst.valuation, AdditiveValuation):
        valuation = {
            "type": "additive",
            "matrix": [
                [format_value(entry) for entry in row]
                for row in inst.valuation.matrix
            ],
        }
    else:
        valuation = {
            "type": "general-identical",
            "table": [format_value(entry) for entry in inst.valuation.table],
        }
    return {
        "agents": inst.agents,
        "items": list(inst.items),
        "valuation": valuation,
    }


def instance_from_dict(data: dict) -> Instance:
    try:
        agents = data["agents"]
        items = tuple(data["items"])
        valuation = data["valuation"]
        vtype = valuation["type"]
    except (KeyError, TypeError) as exc:
        raise InvalidInstance(f"malformed instance document: {exc}") from None
    if not isinstance(agents, int) or isinstance(agents, bool):
        raise InvalidInstance("agents must be an integer")
    if not all(isinstance(name, str) for name in items):
        raise InvalidInstance("item names must be strings")
    if vtype == "additive":
        matrix = tuple(
            tuple(parse_value(entry) for entry in row)
            for row in valuation["matrix"]
        )
        model = AdditiveValuation(matrix)
    elif vtype == "general-identical":
        if len(items) > MAX_GENERAL_ITEMS:
            raise InvalidInstance(
                f"general-identical instances are capped at "
                f"{MAX_GENERAL_ITEMS} items, got {len(items)}"
            )
        table = tuple(parse_value(entry) for entry in valuation["table"])
        model = GeneralIdenticalValuation(table)
    else:
        raise InvalidInstance(f"unknown valuation type {vtype!r}")
    return validate_instance(Instance(agents=agents, items=items, valuation=model))


def allocation_to_dict(inst: Instance, alloc: Allocation) -> dict:
    return {
        "bundles": [list(inst.bundle_names(mask)) for mask in alloc.bundles()]
    }


def allocation_from_dict(inst: Instance, data: dict) -> Allocation:
    try:
        bundles = data["bundles"]
    except (KeyError, TypeError) as exc:
        raise InvalidAllocation(f"malformed allocation document: {exc}") from None
    if len(bundles) != inst.agents:
        raise InvalidAllocation(
            f"expected {inst.agents} bundles, got {len(bundles)}"
        )
    assignment = [-1] * inst.m
    for agent, names in enumerate(bundles):
        for name in names:
            j = inst.item_index(name)
            if assignment[j] != -1:
                raise InvalidAllocation(f"item {name!r} assigned twice")
            assignment[j] = agent
    if -1 in assignment:
        missing = inst.items[assignment.index(-1)]
        raise InvalidAllocation(f"item {missing!r} unassigned")
    return Allocation(inst.agents, tuple(assignment))


def dumps(document: dict) -> str:
    """Canonical JSON rendering: fixed key order, two-space indent, one
    trailing newline."""
    return json.dumps(document, indent=2) + "\n"


def instance_to_json(inst: Instance) -> str:
    return dumps(instance_to_dict(inst))


def instance_from_json(text: str) -> Instance:
    return instance_from_dict(json.loads(text))


def allocation_to_json(inst: Instance, alloc: Allocation) -> str:
    return dumps(allocation_to_dict(inst, alloc))


def allocation_from_json(inst: Instance, text: str) -> Allocation:
    return allocation_from_dict(inst, json.loads(text))
