import json

import numpy as np
import pytest

from raamkit import ParseError, ValidationError
from raamkit.cli import main, parse_problem, run_report

TOY = {"n": 4, "edges": [[1, 2], [1, 4], [2, 4], [3, 4]]}


def toy_problem(**options):
    doc = {"graph": TOY}
    if options:
        doc["options"] = options
    return doc


def test_parse_problem_defaults():
    spec = parse_problem(json.dumps(toy_problem()))
    assert spec.graph.n == 4
    assert spec.truncation == 4
    assert spec.r_grid == [0.5, 0.9, 0.99]
    assert spec.tol == 1e-9
    assert spec.family is None


def test_parse_problem_rejects_bad_documents():
    with pytest.raises(ParseError):
        parse_problem("{not json")
    with pytest.raises(ParseError):
        parse_problem(json.dumps({"graph": TOY, "bogus": 1}))
    with pytest.raises(ParseError):
        parse_problem(json.dumps([]))
    with pytest.raises(ValidationError):
        parse_problem(json.dumps(toy_problem(r_grid=[1.0])))
    with pytest.raises(ValidationError):
        parse_problem(json.dumps(toy_problem(truncation=-1)))
    with pytest.raises(ValidationError):
        parse_problem(json.dumps(toy_problem(tol=0)))


def test_parse_problem_with_family_and_terms():
    doc = {
        "graph": {"n": 2, "edges": []},
        "family": {
            "dim": 1,
            "matrices": [{"re": [[0.5]]}, {"re": [[0.25]], "im": [[0.1]]}],
        },
        "vn_terms": [{"re": 1.0, "p": "g1", "q": "id"}],
    }
    spec = parse_problem(json.dumps(doc))
    assert spec.family.dim == 1
    assert spec.family.matrix(2)[0, 0] == pytest.approx(0.25 + 0.1j)
    coeff, p, q = spec.vn_terms[0]
    assert coeff == 1.0 + 0j
    assert p.letters() == (1,) and q.is_identity


def test_run_report_graph_suite():
    spec = parse_problem(json.dumps(toy_problem()))
    code, doc = run_report(spec, "graph")
    assert code == 0
    assert doc["summary"]["passed"] == doc["summary"]["total"] == 1
    params = doc["reports"][0]["parameters"]
    assert params["complement_components"] == [[1, 2, 3], [4]]
    assert params["clique_number"] == 3
    assert len(params["cliques"]) == 10


def test_run_report_requires_family_for_brehmer():
    spec = parse_problem(json.dumps(toy_problem()))
    with pytest.raises(ValidationError):
        run_report(spec, "brehmer")
    with pytest.raises(ValidationError):
        run_report(spec, "nonsense")


def test_run_report_failing_family():
    doc = {
        "graph": {"n": 2, "edges": []},
        "family": {
            "dim": 2,
            "matrices": [{"re": np.eye(2).tolist()}, {"re": np.eye(2).tolist()}],
        },
    }
    spec = parse_problem(json.dumps(doc))
    code, rep = run_report(spec, "brehmer")
    assert code == 1
    assert rep["summary"]["failed"] >= 1


def test_run_report_inconclusive_only():
    doc = {
        "graph": {"n": 1, "edges": []},
        "family": {"dim": 1, "matrices": [{"re": [[1.0]]}]},
        "options": {"truncation": 8, "r_grid": [0.5]},
        "vn_terms": [
            {"re": 1.0, "p": "g1", "q": "id"},
            {"re": 1.0, "p": "id", "q": "g1"},
        ],
    }
    spec = parse_problem(json.dumps(doc))
    code, rep = run_report(spec, "poisson")
    assert code == 2
    assert rep["summary"]["failed"] == 0
    assert rep["summary"]["inconclusive"] == 1


def write_problem(tmp_path, doc, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_main_fixture_suite_and_determinism(tmp_path, capsys):
    src = write_problem(
        tmp_path, {"graph": TOY, "options": {"truncation": 2, "r_grid": [0.5, 0.9]}}
    )
    out1, out2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
    assert main(["fixtures", "--input", src, "--out", out1]) == 0
    assert main(["fixtures", "--input", src, "--out", out2]) == 0
    captured = capsys.readouterr().out
    assert "passed" in captured
    assert (tmp_path / "r1.json").read_bytes() == (tmp_path / "r2.json").read_bytes()
    doc = json.loads((tmp_path / "r1.json").read_text())
    assert doc["summary"]["failed"] == 0


def test_main_exit_codes(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["graph", "--input", missing]) == 4
    bad = write_problem(tmp_path, {"graph": {"n": 2}}, "bad.json")
    assert main(["graph", "--input", bad]) == 4
    src = write_problem(tmp_path, {"graph": TOY})
    assert main(["graph", "--input", src]) == 0
    capsys.readouterr()


def test_main_flag_overrides(tmp_path, capsys):
    src = write_problem(tmp_path, {"graph": TOY})
    out = str(tmp_path / "rep.json")
    code = main(
        ["identities", "--input", src, "--suite-tol", "1e-6", "--truncation", "2", "--out", out]
    )
    assert code == 0
    assert main(["identities", "--input", src, "--suite-tol", "-1"]) == 4
    capsys.readouterr()


def test_main_guard_env(tmp_path, capsys, monkeypatch):
    src = write_problem(tmp_path, {"graph": TOY, "options": {"truncation": 3}})
    monkeypatch.setenv("RAAMKIT_GUARD", "3")
    assert main(["fixtures", "--input", src]) == 4
    monkeypatch.setenv("RAAMKIT_GUARD", "not-a-number")
    assert main(["graph", "--input", src]) == 4
    capsys.readouterr()
