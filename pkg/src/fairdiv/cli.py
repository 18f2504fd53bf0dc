"""Command-line interface.

Exit codes: 0 when the requested property holds or the operation
succeeds, 1 when a violation was found, 2 on any error.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from .audit import NOTIONS, Verdict, audit
from .errors import FairdivError
from .fixtures import FIXTURE_NAMES, run_fixture
from .generators import FAMILIES, GeneratorConfig, generate
from .greedy import alg_identical_trace
from .leximin import SPEC_NAMES
from .methods import METHODS, solve_with_method
from .model import format_value, parse_value
from .search import search_counterexamples
from .serialize import (
    allocation_from_dict,
    allocation_to_dict,
    dumps,
    instance_from_json,
    instance_to_dict,
)


def _load_instance(path: str):
    try:
        return instance_from_json(Path(path).read_text())
    except OSError as exc:
        raise FairdivError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FairdivError(f"{path} is not valid JSON: {exc}") from exc


def _load_allocation(inst, path: str):
    try:
        document = json.loads(Path(path).read_text())
    except OSError as exc:
        raise FairdivError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FairdivError(f"{path} is not valid JSON: {exc}") from exc
    return allocation_from_dict(inst, document)


def _render(entry):
    if isinstance(entry, tuple):
        return [_render(part) for part in entry]
    if isinstance(entry, Fraction):
        return format_value(entry)
    return entry


def _score_dict(score):
    if score is None:
        return None
    return {
        "nonzero_count": score.nonzero_count,
        "product": format_value(score.product),
    }


def _guarded(fn):
    try:
        return fn()
    except FairdivError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


@click.group()
def main():
    """Exact solvers, fairness checks and counterexample search for
    allocating indivisible goods and chores."""


@main.command()
@click.option("--instance", "instance_path", required=True, help="Instance JSON file.")
@click.option("--method", required=True, type=click.Choice(METHODS))
@click.option(
    "--objective",
    type=click.Choice(sorted(SPEC_NAMES)),
    default=None,
    help="Objective family; only meaningful with --method leximin.",
)
@click.option("--trace", is_flag=True, help="Emit greedy trace as JSON lines.")
@click.option("--max-space", type=int, default=None, help="Search-space cap.")
def solve(instance_path, method, objective, trace, max_space):
    """Solve an instance and print the allocation."""

    def run():
        effective = method
        if objective is not None:
            if method != "leximin":
                raise FairdivError("--objective applies only to --method leximin")
            effective = objective
        inst = _load_instance(instance_path)
        if trace:
            if effective != "alg-identical":
                raise FairdivError("--trace applies only to --method alg-identical")
            for step in alg_identical_trace(inst):
                click.echo(
                    json.dumps(
                        {
                            "item": inst.items[step.item],
                            "agent": step.agent,
                            "utilities": [format_value(u) for u in step.utilities],
                        }
                    )
                )
        result = solve_with_method(inst, effective, max_space)
        click.echo(
            dumps(
                {
                    "method": effective,
                    "allocation": allocation_to_dict(inst, result.allocation),
                    "objective_vector": [_render(t) for t in result.objective_vector],
                    "score": _score_dict(result.score),
                    "tie_count": result.tie_count,
                    "search_space": result.search_space,
                }
            ),
            nl=False,
        )

    _guarded(run)


@main.command("audit")
@click.option("--instance", "instance_path", required=True, help="Instance JSON file.")
@click.option("--allocation", "allocation_path", required=True, help="Allocation JSON file.")
@click.option(
    "--notions",
    default=",".join(NOTIONS),
    show_default=True,
    help="Comma-separated fairness notions.",
)
@click.option("--max-space", type=int, default=None, help="Search-space cap.")
def audit_command(instance_path, allocation_path, notions, max_space):
    """Check fairness notions for a given allocation."""

    def run():
        inst = _load_instance(instance_path)
        alloc = _load_allocation(inst, allocation_path)
        wanted = tuple(n.strip() for n in notions.split(",") if n.strip())
        report = audit(inst, alloc, wanted, max_space)
        click.echo(dumps(report.as_list(inst)), nl=False)
        verdicts = [res.verdict for _, res in report.results]
        if Verdict.FAILS in verdicts:
            sys.exit(1)
        if Verdict.NOT_APPLICABLE in verdicts:
            sys.exit(2)

    _guarded(run)


def _generator_options(fn):
    options = [
        click.option("--family", required=True, type=click.Choice(FAMILIES)),
        click.option("--agents", required=True, type=int),
        click.option("--items", required=True, type=int),
        click.option("--seed", required=True, type=int),
        click.option("--low", default="-10", show_default=True, help="Lower value bound."),
        click.option("--high", default="10", show_default=True, help="Upper value bound."),
        click.option("--denominator", default=10, show_default=True, type=int),
        click.option("--weight-max", default=8, show_default=True, type=int),
        click.option("--perturb-max", default=4, show_default=True, type=int),
        click.option("--rescale", default=None, help="Common grand-bundle value."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _config(family, agents, items, seed, low, high, denominator, weight_max, perturb_max, rescale):
    return GeneratorConfig(
        agents=agents,
        items=items,
        family=family,
        seed=seed,
        low=parse_value(low),
        high=parse_value(high),
        denominator=denominator,
        weight_max=weight_max,
        perturb_max=perturb_max,
        rescale_total=None if rescale is None else parse_value(rescale),
    )


@main.command()
@_generator_options
@click.option("--out", default=None, help="Write the instance here instead of stdout.")
def gen(family, agents, items, seed, low, high, denominator, weight_max, perturb_max, rescale, out):
    """Generate a random instance."""

    def run():
        config = _config(
            family, agents, items, seed, low, high, denominator,
            weight_max, perturb_max, rescale,
        )
        text = dumps(instance_to_dict(generate(config)))
        if out is None:
            click.echo(text, nl=False)
        else:
            Path(out).write_text(text)

    _guarded(run)


@main.command()
@_generator_options
@click.option("--method", required=True, type=click.Choice(METHODS))
@click.option(
    "--notions",
    default=",".join(NOTIONS),
    show_default=True,
    help="Comma-separated fairness notions.",
)
@click.option("--trials", required=True, type=int)
@click.option("--max-space", type=int, default=None, help="Search-space cap.")
def search(family, agents, items, seed, low, high, denominator, weight_max, perturb_max, rescale, method, notions, trials, max_space):
    """Hunt for fairness violations of a solver on random instances."""

    def run():
        config = _config(
            family, agents, items, seed, low, high, denominator,
            weight_max, perturb_max, rescale,
        )
        wanted = tuple(n.strip() for n in notions.split(",") if n.strip())
        report = search_counterexamples(config, method, wanted, trials, max_space=max_space)
        click.echo(dumps(report.as_dict()), nl=False)
        if report.found:
            sys.exit(1)

    _guarded(run)


@main.command()
@click.option("--name", required=True, type=click.Choice(FIXTURE_NAMES))
@click.option("--max-space", type=int, default=None, help="Search-space cap.")
def fixture(name, max_space):
    """Re-verify one built-in counterexample fixture."""

    def run():
        report = run_fixture(name, max_space)
        click.echo(dumps(report.as_dict()), nl=False)

    _guarded(run)


if __name__ == "__main__":
    main()
