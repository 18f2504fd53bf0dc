"""End-to-end command line coverage via click's test runner."""

import json

import pytest
from click.testing import CliRunner

from fairdiv import (
    Allocation,
    allocation_to_dict,
    fixture_instance,
    instance_to_dict,
)
from fairdiv.cli import main
from fairdiv.serialize import dumps

runner = CliRunner()


def write_instance(tmp_path, name):
    inst = fixture_instance(name)
    path = tmp_path / f"{name}.json"
    path.write_text(dumps(instance_to_dict(inst)))
    return inst, str(path)


def write_allocation(tmp_path, inst, assignment, name="alloc"):
    path = tmp_path / f"{name}.json"
    alloc = Allocation(inst.agents, assignment)
    path.write_text(dumps(allocation_to_dict(inst, alloc)))
    return str(path)


GEN_ARGS = [
    "gen",
    "--family", "identical-additive",
    "--agents", "3",
    "--items", "5",
    "--seed", "5",
]


def test_gen_solve_audit_round_trip(tmp_path):
    instance_path = str(tmp_path / "inst.json")
    res = runner.invoke(main, GEN_ARGS + ["--out", instance_path])
    assert res.exit_code == 0

    res = runner.invoke(
        main, ["solve", "--instance", instance_path, "--method", "alg-identical"]
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["method"] == "alg-identical"
    assert doc["tie_count"] == 1

    allocation_path = str(tmp_path / "alloc.json")
    (tmp_path / "alloc.json").write_text(dumps({"bundles": doc["allocation"]["bundles"]}))
    res = runner.invoke(
        main,
        [
            "audit",
            "--instance", instance_path,
            "--allocation", allocation_path,
            "--notions", "efx,ef1",
        ],
    )
    assert res.exit_code == 0
    rows = json.loads(res.output)
    assert [r["notion"] for r in rows] == ["efx", "ef1"]
    assert all(r["holds"] for r in rows)


def test_gen_is_deterministic_and_prints_json():
    a = runner.invoke(main, GEN_ARGS)
    b = runner.invoke(main, GEN_ARGS)
    assert a.exit_code == b.exit_code == 0
    assert a.output == b.output
    doc = json.loads(a.output)
    assert doc["agents"] == 3
    assert doc["items"] == ["o1", "o2", "o3", "o4", "o5"]


def test_solve_objective_requires_leximin(tmp_path):
    _, instance_path = write_instance(tmp_path, "mnw")
    res = runner.invoke(
        main,
        [
            "solve",
            "--instance", instance_path,
            "--method", "mnw-prime",
            "--objective", "leximin++",
        ],
    )
    assert res.exit_code == 2
    assert "error:" in res.stderr


def test_solve_objective_switches_the_leximin_family(tmp_path):
    _, instance_path = write_instance(tmp_path, "table1")
    res = runner.invoke(
        main,
        [
            "solve",
            "--instance", instance_path,
            "--method", "leximin",
            "--objective", "leximin-gc",
        ],
    )
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["method"] == "leximin-gc"
    # utility, goods count, negated chores count per agent
    assert doc["objective_vector"][0] == ["-18", 0, -3]


def test_solve_trace_emits_json_lines(tmp_path):
    instance_path = str(tmp_path / "inst.json")
    runner.invoke(main, GEN_ARGS + ["--out", instance_path])
    res = runner.invoke(
        main,
        ["solve", "--instance", instance_path, "--method", "alg-identical", "--trace"],
    )
    assert res.exit_code == 0
    lines = res.output.splitlines()
    steps = [json.loads(line) for line in lines[:5]]
    assert {step["item"] for step in steps} == {"o1", "o2", "o3", "o4", "o5"}
    assert all(len(step["utilities"]) == 3 for step in steps)
    doc = json.loads("\n".join(lines[5:]))
    assert doc["method"] == "alg-identical"


def test_solve_trace_requires_the_greedy_method(tmp_path):
    _, instance_path = write_instance(tmp_path, "table1")
    res = runner.invoke(
        main, ["solve", "--instance", instance_path, "--method", "leximin", "--trace"]
    )
    assert res.exit_code == 2
    assert "--trace" in res.stderr


def test_audit_exit_one_on_violation(tmp_path):
    inst, instance_path = write_instance(tmp_path, "table1")
    allocation_path = write_allocation(tmp_path, inst, (0, 0, 0, 1, 2, 3, 4))
    res = runner.invoke(
        main,
        [
            "audit",
            "--instance", instance_path,
            "--allocation", allocation_path,
            "--notions", "prop1",
        ],
    )
    assert res.exit_code == 1
    rows = json.loads(res.output)
    assert rows == [
        {
            "notion": "prop1",
            "holds": False,
            "witness": {
                "agent": 0,
                "value": "-18",
                "best_adjusted": "-12",
                "threshold": "-11",
            },
        }
    ]


def test_audit_exit_zero_when_notions_hold(tmp_path):
    inst, instance_path = write_instance(tmp_path, "mnw2")
    allocation_path = write_allocation(tmp_path, inst, (0, 0, 0, 1, 2))
    res = runner.invoke(
        main,
        [
            "audit",
            "--instance", instance_path,
            "--allocation", allocation_path,
            "--notions", "po",
        ],
    )
    assert res.exit_code == 0
    assert json.loads(res.output)[0]["holds"] is True


def test_audit_exit_two_when_guard_skips(tmp_path):
    inst, instance_path = write_instance(tmp_path, "mnw2")
    allocation_path = write_allocation(tmp_path, inst, (0, 0, 0, 1, 2))
    res = runner.invoke(
        main,
        [
            "audit",
            "--instance", instance_path,
            "--allocation", allocation_path,
            "--notions", "po",
            "--max-space", "10",
        ],
    )
    assert res.exit_code == 2
    row = json.loads(res.output)[0]
    assert row["holds"] is None
    assert row["witness"] == {"search_space": 243, "limit": 10}


def test_audit_rejects_unknown_notion(tmp_path):
    inst, instance_path = write_instance(tmp_path, "mnw2")
    allocation_path = write_allocation(tmp_path, inst, (0, 0, 0, 1, 2))
    res = runner.invoke(
        main,
        [
            "audit",
            "--instance", instance_path,
            "--allocation", allocation_path,
            "--notions", "prop2",
        ],
    )
    assert res.exit_code == 2
    assert "error:" in res.stderr


def test_fixture_command(tmp_path):
    res = runner.invoke(main, ["fixture", "--name", "mnw2"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["name"] == "mnw2"
    assert doc["fails"] == "ef1"
    assert doc["tie_count"] == 1
    assert doc["allocation"]["bundles"] == [["a", "b", "c"], ["d"], ["e"]]


def test_search_exit_one_when_a_violation_is_found():
    res = runner.invoke(
        main,
        [
            "search",
            "--family", "additive-chores",
            "--agents", "3",
            "--items", "5",
            "--seed", "7",
            "--method", "mnw-constrained",
            "--notions", "ef1",
            "--trials", "5",
        ],
    )
    assert res.exit_code == 1
    doc = json.loads(res.output)
    assert len(doc["violations"]) == 1
    assert doc["violations"][0]["trial"] == 4


def test_search_exit_zero_when_clean():
    res = runner.invoke(
        main,
        [
            "search",
            "--family", "additive-chores",
            "--agents", "2",
            "--items", "3",
            "--seed", "1",
            "--rescale", "-1",
            "--method", "leximin",
            "--notions", "prop1,po",
            "--trials", "3",
        ],
    )
    assert res.exit_code == 0
    assert json.loads(res.output)["violations"] == []


def test_missing_file_and_invalid_json_exit_two(tmp_path):
    res = runner.invoke(
        main, ["solve", "--instance", str(tmp_path / "nope.json"), "--method", "leximin"]
    )
    assert res.exit_code == 2
    assert "cannot read" in res.stderr

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    res = runner.invoke(main, ["solve", "--instance", str(bad), "--method", "leximin"])
    assert res.exit_code == 2
    assert "not valid JSON" in res.stderr


def test_malformed_allocation_exits_two(tmp_path):
    inst, instance_path = write_instance(tmp_path, "mnw2")
    path = tmp_path / "alloc.json"
    path.write_text(dumps({"bundles": [["a", "b"], ["d"], ["e"]]}))
    res = runner.invoke(
        main,
        ["audit", "--instance", instance_path, "--allocation", str(path)],
    )
    assert res.exit_code == 2
    assert "error:" in res.stderr
