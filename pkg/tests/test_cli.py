import json

import pytest

from cendcohom.cli import RunConfig, main

TAU = [{"l": 1, "value": [{"key": 2, "poly": [[0, "1"]]}]}]


@pytest.fixture
def files(tmp_path):
    tau = tmp_path / "tau.json"
    tau.write_text(json.dumps(TAU))
    seeds = tmp_path / "seeds.json"
    assert main(["cocycle", "from-tau", "--tau", str(tau), "-o", str(seeds)]) == 0
    return tmp_path, tau, seeds


def load(p):
    return json.loads(p.read_text())


def test_run_config_rejects_nonpositive_bounds():
    with pytest.raises(ValueError):
        RunConfig("split", kmax=0)
    assert main(["split", "--kmax", "0", "--fuzz", "1"]) == 2


def test_check_algebra(tmp_path):
    out = tmp_path / "r.json"
    assert main(["check-algebra", "-o", str(out)]) == 0
    rep = load(out)
    assert rep["passed"]
    assert rep["config"]["kmax"] == 5 and rep["config"]["seed"] == 0
    assert all(r["checked"] > 0 and r["bounds"] for r in rep["reports"])


def test_check_algebra_bad_spec_file(tmp_path):
    bad = tmp_path / "m.json"
    bad.write_text("{not json")
    assert main(["check-algebra", "--bimodule", str(bad)]) == 2


def test_from_tau_seeds(files):
    _, _, seeds = files
    data = load(seeds)
    diag = {t: v for t, v in data["diag"]}
    assert set(diag) == {1, 2}
    assert diag[1] == [{"key": 2, "poly": [[0, "2"]]}]
    assert diag[2] == [{"key": 1, "poly": [[0, "2"]]}]
    row0 = {l: v for l, v in data["row0"]}
    assert row0[1] == [{"key": 3, "poly": [[0, "2"]]}]
    assert all(row0[l] == [{"key": l + 2, "poly": [[0, "1"]]}] for l in range(2, data["row0_cutoff"] + 1))
    assert data["row0_cutoff"] == 15


def test_cocycle_check_and_perturbed(files):
    tmp, _, seeds = files
    assert main(["cocycle", "check", str(seeds), "--kmax", "3", "--nmax", "3"]) == 0
    data = load(seeds)
    data["diag"][0][1][0]["poly"] = [[0, "3"]]
    bad = tmp / "bad.json"
    bad.write_text(json.dumps(data))
    out = tmp / "r.json"
    assert main(["cocycle", "check", str(bad), "--kmax", "3", "--nmax", "3", "-o", str(out)]) == 1
    assert load(out)["reports"][0]["first_violation"]
    assert main(["split", str(bad), "--kmax", "3", "--nmax", "3"]) == 1
    assert main(["extension", "check", str(bad), "--kmax", "2", "--nmax", "2"]) == 1


def test_split_worked_trace(files):
    tmp, tau, seeds = files
    out = tmp / "cert.json"
    assert main(["split", str(seeds), "-o", str(out)]) == 0
    cert = load(out)["certificate"]
    assert cert["passed"]
    assert cert["psi_total"] == [{"l": 1, "value": [{"key": 2, "poly": [[0, "1"]]}]}]
    assert cert["m_effective"] == 4
    assert all(t["passed"] for t in cert["transcript"])
    assert main(["split", "--tau", str(tau), "-o", str(out)]) == 0


def test_split_fuzz_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["split", "--fuzz", "3", "--seed", "42", "--kmax", "3", "--nmax", "4"]
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = load(a)
    assert rep["config"]["seed"] == 42
    assert [c["index"] for c in rep["certificates"]] == [0, 1, 2]


def test_split_missing_input(tmp_path):
    assert main(["split", str(tmp_path / "none.json")]) == 2
    assert main(["split"]) == 2


def test_zero_cochain_split(tmp_path):
    z = tmp_path / "z.json"
    z.write_text(json.dumps({"diag": [], "row0": []}))
    out = tmp_path / "c.json"
    assert main(["split", str(z), "--kmax", "2", "--nmax", "2", "-o", str(out)]) == 0
    assert load(out)["certificate"]["psi_total"] == []


def test_extension_commands(files):
    tmp, _, seeds = files
    out = tmp / "e.json"
    assert main(["extension", "build", str(seeds), "--kmax", "2", "--nmax", "2", "-o", str(out)]) == 0
    assert load(out)["extension"]["products"]
    assert main(["extension", "check", str(seeds), "--kmax", "2", "--nmax", "2", "-o", str(out)]) == 0
    assert load(out)["agrees_with_cocycle_check"]
    assert main(["extension", "split-check", str(seeds), "--kmax", "3", "--nmax", "4"]) == 0


def test_bimodule_check_and_export(tmp_path):
    out = tmp_path / "uq.json"
    assert main(["bimodule", "export", "--bimodule", "unit_quotient", "-o", str(out)]) == 0
    assert main(["bimodule", "check", "--bimodule", str(out), "--kmax", "2", "--nmax", "2"]) == 0
    assert main(["bimodule", "export", "--bimodule", "regular"]) == 2
    assert main(["bimodule", "check", "--bimodule", "nope"]) == 2


def test_cocycle_from_seeds_probe(files):
    tmp, _, seeds = files
    out = tmp / "p.json"
    assert main(["cocycle", "from-seeds", str(seeds), "--lcheck", "4", "-o", str(out)]) == 0
    probe = load(out)["probe"]
    assert {"s": 1, "k": 1, "l": 1, "value": [{"key": 2, "poly": [[0, "2"]]}]} in probe
