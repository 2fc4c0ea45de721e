import json
from importlib.resources import files

import jsonschema
import pytest
from referencing import Registry, Resource

from deligne_kit.cli import main
from deligne_kit.library import catalog


SCHEMA_DIR = files("deligne_kit").joinpath("schemas")
SCHEMAS = {p.name.split(".")[0]: json.loads(p.read_text()) for p in SCHEMA_DIR.iterdir() if p.name.endswith(".json")}
REGISTRY = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in SCHEMAS.values())


def check(obj, name):
    jsonschema.Draft202012Validator(SCHEMAS[name], registry=REGISTRY).validate(obj)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    rep = json.loads(out)
    check(rep, "report")
    return code, rep


def test_thm2_example(capsys):
    code, out = run(capsys, "thm2-check", "--dgla", "obstruction", "--artin", "F5[t]/t^3", "--human")
    assert code == 0
    lines = set(out.splitlines())
    assert {"result.lhs=5", "result.rhs=5", "result.match=true"} <= lines


def test_emit_then_validate(capsys, tmp_path):
    code, out = run(capsys, "examples", "emit", "obstruction")
    assert code == 0
    obj = json.loads(out)
    check(obj, "dgla")
    assert obj["basis"] == {"1": ["e"], "2": ["f"]}
    path = tmp_path / "ob.json"
    path.write_text(out)
    code, rep = run_json(capsys, "validate", str(path))
    assert code == 0 and rep["ok"]


@pytest.mark.parametrize("kind,name", [kn for kn in catalog() if kn[0] != "mutant"])
def test_emitted_objects_match_schemas(capsys, tmp_path, kind, name):
    code, out = run(capsys, "examples", "emit", name)
    obj = json.loads(out)
    check(obj, kind)
    path = tmp_path / "x.json"
    path.write_text(out)
    assert run_json(capsys, "validate", str(path))[0] == 0


@pytest.mark.parametrize("name", [n for k, n in catalog() if k == "mutant"])
def test_mutants_exit_one(capsys, name):
    code, rep = run_json(capsys, "validate", name)
    assert code == 1 and not rep["ok"]
    failed = [c for c in rep["result"]["checks"] if not c["passed"]]
    assert failed and failed[0]["witness"]


def test_input_errors_exit_two(capsys, tmp_path):
    assert run_json(capsys, "cohomology", "--dgla", "no-such-dgla")[0] == 2
    assert run_json(capsys, "pi0", "--dgla", "acyclic", "--artin", "F4[t]/t^2")[0] == 2
    assert run_json(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "dgla", "field": "F5", "basis": {"1": ["e"]},
                               "differential": [["e", "zz", 1]], "bracket": []}))
    code, rep = run_json(capsys, "validate", str(bad))
    assert code == 2 and "input_error" in rep


def test_hypothesis_errors_exit_one(capsys):
    code, rep = run_json(capsys, "def-ring", "--dgla", "heisenberg", "--field", "Q")
    assert code == 1 and rep["kind"] == "HypothesisViolated"
    code, rep = run_json(capsys, "stack-check", "--cover", "split:obstruction", "--artin", "F5[e]/e^2")
    assert code == 1 and rep["kind"] == "HypothesisNotVerified"


def test_stack_check_bypass_reports_failure(capsys):
    code, rep = run_json(capsys, "stack-check", "--cover", "split:obstruction", "--artin", "F5[e]/e^2",
                         "--bypass-hypothesis")
    assert code == 1
    assert (rep["result"]["global_classes"], rep["result"]["descent_classes"]) == (5, 25)


@pytest.mark.parametrize("argv,key,value", [
    (("cohomology", "--dgla", "obstruction", "--field", "Q"), "cohomology",
     {"1": {"dim": 1, "representatives": ["e"]}, "2": {"dim": 1, "representatives": ["f"]}}),
    (("pi0", "--dgla", "acyclic", "--artin", "F5[e]/e^2"), "count", 1),
    (("mc", "--dgla", "obstruction", "--artin", "F5[t]/t^3"), "count", 5),
    (("def-ring", "--dgla", "obstruction", "--field", "Q"), "presentation", "gens=[xi1] rels=[xi1^2]"),
    (("nilpotency", "--dgla", "heisenberg", "--field", "F5"), "nilpotency_class", 2),
    (("rep-def", "--rep", "C5-trivial", "--artin", "F5[t]/t^3"), "count", 25),
])
def test_command_results(capsys, argv, key, value):
    code, rep = run_json(capsys, *argv)
    assert code == 0 and rep["result"][key] == value


@pytest.mark.parametrize("argv", [
    ("ks-check", "--dgla", "random", "--field", "F7"),
    ("thm1-compare", "--dgla", "obstruction", "--field", "F7"),
    ("cech", "--cover", "constant3:obstruction"),
    ("sheaf-check", "--cover", "constant2:abelian"),
    ("stack-check", "--cover", "constant2:acyclic", "--artin", "F5[t]/t^3"),
    ("governance-check", "--rep", "C5-trivial", "--artin", "F5[e]/e^2"),
    ("examples", "list"),
])
def test_commands_pass(capsys, argv):
    code, rep = run_json(capsys, *argv)
    assert code == 0 and rep["ok"]


def test_reports_are_deterministic(capsys):
    argv = ("pi0", "--dgla", "random", "--artin", "F5[t]/t^3", "--seed", "3")
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)
    assert json.loads(first[1])["seed"] == 3


def test_human_mode_is_flat(capsys):
    code, out = run(capsys, "sheaf-check", "--cover", "split:obstruction", "--human")
    assert code == 1
    assert all("=" in line for line in out.splitlines())
