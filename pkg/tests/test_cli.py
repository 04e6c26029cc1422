import json

import pytest

from operadform.associator import AssociatorSeries
from operadform.cli import RunConfig, main, poincare_oracle, run, series_coefficients


def _strip_timing(doc):
    doc = json.loads(json.dumps(doc))
    for c in doc["checks"]:
        c.pop("ms")
    return doc


def test_oracles():
    assert series_coefficients([1, 2], 4) == [1, 3, 7, 15, 31]
    assert series_coefficients([], 3) == [1, 0, 0, 0]
    assert poincare_oracle(4) == [1, 6, 11, 6]


def test_config_invariants():
    with pytest.raises(ValueError):
        RunConfig(max_weight=0)
    with pytest.raises(ValueError):
        RunConfig(max_n=1)
    with pytest.raises(ValueError):
        RunConfig(relator_mode="other")


def test_dims_report(monkeypatch):
    monkeypatch.delenv("OPERAD_CACHE", raising=False)
    rep = run("dims", RunConfig(max_n=3, max_weight=4))
    assert rep.ok
    rows = {c.name: c.computed for c in rep.checks}
    assert rows["dims n=2"] == [1] * 5
    assert rows["dims n=3"] == [1, 3, 7, 15, 31]


def test_dims_paper_literal(monkeypatch):
    monkeypatch.delenv("OPERAD_CACHE", raising=False)
    rep = run("dims", RunConfig(max_n=4, max_weight=3, relator_mode="paper-literal"))
    assert rep.ok
    assert rep.checks[-1].computed == [1, 6, 28, 120]


def test_report_schema_and_determinism(monkeypatch):
    monkeypatch.delenv("OPERAD_CACHE", raising=False)
    cfg = RunConfig(max_n=3, max_weight=3)
    a, b = run("homology", cfg).to_json(), run("homology", cfg).to_json()
    assert set(a) >= {"config", "checks"}
    for c in a["checks"]:
        assert set(c) >= {"name", "status", "expected", "computed", "ms"}
    assert json.dumps(_strip_timing(a), sort_keys=True) == json.dumps(_strip_timing(b), sort_keys=True)
    names = [c["name"] for c in a["checks"]]
    assert len(names) == len(set(names))


def test_main_exit_codes_and_formats(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("OPERAD_CACHE", raising=False)
    out = tmp_path / "r.md"
    assert main(["dims", "--max-n", "3", "--format", "md", "--out", str(out)]) == 0
    text = out.read_text()
    assert "| dims n=3 | PASS |" in text
    assert main(["dims", "--max-n", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["config"]["max_n"] == 2


def test_missing_associator_file(tmp_path, capsys):
    code = main(["verify-formality", "--max-n", "3", "--associator", str(tmp_path / "none.json")])
    assert code == 2
    assert "missing associator file" in capsys.readouterr().err


def test_trivial_associator_fails_hexagon(tmp_path, capsys):
    path = tmp_path / "one.json"
    AssociatorSeries.trivial(2).dump(path)
    code = main(["verify-formality", "--max-n", "3", "--degree", "2", "--associator", str(path)])
    assert code == 1
    err = capsys.readouterr().err
    assert "FAILED: defect hexagon-1" in err
    assert "FAILED: defect pentagon" not in err


def test_degree_beyond_file_is_truncation_error(tmp_path, capsys):
    path = tmp_path / "one.json"
    AssociatorSeries.trivial(2).dump(path)
    assert main(["verify-formality", "--max-n", "2", "--degree", "3", "--associator", str(path)]) == 2
    assert "degree" in capsys.readouterr().err


def test_solve_then_verify(tmp_path, capsys):
    path = tmp_path / "phi.json"
    assert main(["solve-associator", "--degree", "3", "--associator", str(path)]) == 0
    capsys.readouterr()
    assert json.loads(path.read_text())["degree"] == 3
    assert main(["verify-formality", "--max-n", "3", "--degree", "3", "--associator", str(path)]) == 0


def test_cache_dir_and_env_override(tmp_path, monkeypatch):
    a, b = tmp_path / "a", tmp_path / "b"
    monkeypatch.setenv("OPERAD_CACHE", str(b))
    run("dims", RunConfig(max_n=3, max_weight=2, cache_dir=str(a)))
    assert not a.exists() and any(b.iterdir())


def test_cache_corruption_is_reported(tmp_path, monkeypatch):
    monkeypatch.setenv("OPERAD_CACHE", str(tmp_path))
    assert run("dims", RunConfig(max_n=3, max_weight=3)).ok
    victim = next(p for p in tmp_path.iterdir() if p.name.startswith("dk_n3_d3_"))
    doc = json.loads(victim.read_text())
    doc["checksum"] = "0" * 64
    victim.write_text(json.dumps(doc))
    # a fresh algebra instance is needed to re-read the file
    from operadform import dk_algebra
    dk_algebra._algebra.cache_clear()
    rep = run("dims", RunConfig(max_n=3, max_weight=3))
    dk_algebra._algebra.cache_clear()
    assert not rep.ok
    assert "checksum" in rep.failures[0].computed


def test_e2_section(monkeypatch):
    rep = run("e2", RunConfig(samples=20))
    assert rep.ok
    assert {c.name: c.computed for c in rep.checks}["e2 basis size n=5"] == 120
