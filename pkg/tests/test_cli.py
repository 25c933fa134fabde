import csv
import json
import math
import subprocess
import sys

import pytest

from quasispec import cli
from quasispec.asymptotics import AsymptoticsReport
from quasispec.momentum import CouplingSpectrum
from quasispec.radial import EigenResult


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def data_rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.reader(lines))


# ---------------------------------------------------------------- documented examples


def test_solve_frozen_coulomb(capsys):
    code, out, _ = run(["solve", "--alpha", "0.3", "--l", "0", "--n", "0", "--mode", "frozen-coulomb"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["config"]["alpha"] == 0.3 and doc["config"]["mode"] == "frozen-coulomb"
    assert doc["result"]["binding_energy"] == pytest.approx(0.0225, rel=1e-8)
    assert doc["binding_energy"]["over_m_alpha2"] == pytest.approx(0.25, rel=1e-8)
    res = EigenResult.from_dict(doc["result"])
    assert res.node_count == 0


def test_classify_qed(capsys):
    code, out, _ = run(["classify", "--alpha", "0.00729927", "--l", "0", "--energy-over-m", "5.3e-5"], capsys)
    assert code == 0
    doc = json.loads(out)
    rep = AsymptoticsReport.from_dict(doc["result"])
    assert rep.branch.value == "B_infinite"
    assert rep.eq19_satisfiable is False
    assert doc["energy"]["over_m"] == 5.3e-5


def test_specfun_f_zero(capsys):
    code, out, _ = run(["specfun", "f", "--x", "0"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["value"] == pytest.approx(math.pi / 2, abs=1e-12)


@pytest.mark.parametrize("argv,key", [
    (["specfun", "ci", "--x", "1"], "value"),
    (["specfun", "si", "--x", "1"], "value"),
    (["specfun", "k-real", "--nu", "0.5", "--x", "1"], "value"),
    (["specfun", "k-imag", "--mu", "2", "--x", "0.5"], "value"),
    (["specfun", "k-imag-zeros", "--mu", "2", "--x", "1e-3"], "zeros"),
])
def test_specfun_functions(argv, key, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert key in json.loads(out)["result"]


def test_self_consistent_solve_reports_both_units(capsys):
    code, out, _ = run(["solve", "--alpha", "0.3"], capsys)
    doc = json.loads(out)
    E = doc["result"]["binding_energy"]
    assert doc["binding_energy"]["over_m"] == E
    assert doc["binding_energy"]["over_m_alpha2"] == pytest.approx(E / 0.09)
    assert doc["self_consistency"]["bracket"] is not None


def test_solve_csv_wavefunction(capsys):
    code, out, _ = run(["solve", "--alpha", "0.3", "--mode", "frozen", "--e-param-over-m", "0.01",
                        "--format", "csv", "--n-points", "2000"], capsys)
    assert code == 0
    assert out.startswith("# schema: 1\n# config: ")
    rows = data_rows(out)
    assert rows[0] == ["r", "chi"]
    assert len(rows) > 100


@pytest.mark.parametrize("flag, expected", [(["--wavefunction"], True),
                                             (["--wavefunction", "false"], False),
                                             ([], False)])
def test_boolean_flag_forms(flag, expected, capsys):
    code, out, _ = run(["solve", "--alpha", "0.3", "--mode", "frozen-coulomb", "--n-points", "2000"] + flag,
                       capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["wavefunction"] is expected
    assert ("chi" in doc["result"]) is expected


def test_potential_csv(capsys):
    code, out, _ = run(["potential", "--alpha", "0.3", "--energy-over-m", "0.01", "--n-points", "50"], capsys)
    assert code == 0
    rows = data_rows(out)
    assert rows[0] == ["r", "v", "v_coulomb", "v_large_r_asymptote"]
    assert len(rows) == 51
    assert all(float(r[1]) < 0 for r in rows[1:])


def test_momentum_spectrum(capsys):
    code, out, _ = run(["momentum", "--alpha", "0.3", "--e-param-over-m", "0", "--trial-binding-over-m",
                        "0.0225", "--n-nodes", "120"], capsys)
    assert code == 0
    spec = CouplingSpectrum.from_dict(json.loads(out)["result"])
    assert spec.eigen_couplings[0] == pytest.approx(0.3, abs=1e-4)


def test_momentum_self_consistent(capsys):
    code, out, _ = run(["momentum", "--alpha", "0.3", "--mode", "self-consistent", "--n-nodes", "100"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["eigen_couplings"][0] == pytest.approx(0.3, rel=1e-9)
    assert doc["binding_energy"]["over_m"] == pytest.approx(0.0151059, rel=1e-5)


# ---------------------------------------------------------------- configuration


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# frozen Coulomb\nalpha = 0.2\nmode = frozen-coulomb\nn = 1\n")
    code, out, _ = run(["solve", "--config", str(cfg), "--n", "0"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["config"]["n"] == 0 and doc["config"]["alpha"] == 0.2
    assert doc["result"]["binding_energy"] == pytest.approx(0.01, rel=1e-8)


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("alpha = 0.2\nbogus = 3\n")
    code, _, err = run(["solve", "--config", str(cfg)], capsys)
    assert code == 2
    assert "bogus" in json.loads(err)["error"]["message"]


@pytest.mark.parametrize("argv", [
    ["solve"],
    ["solve", "--alpha", "-0.1"],
    ["solve", "--alpha", "abc"],
    ["solve", "--alpha", "0.1", "--mode", "sideways"],
    ["solve", "--alpha", "0.1", "--unknown-flag", "1"],
    ["classify", "--alpha", "0.1"],
    ["classify", "--alpha", "0.1", "--energy-over-m", "1e-3", "--energy-over-m-alpha2", "0.1"],
    ["specfun", "ci", "--x", "-1"],
    ["specfun", "k-real", "--x", "1"],
    ["classify", "--alpha", "0.1", "--energy-over-m", "1e-3", "--format", "csv"],
    ["scan", "--l-values", "0,-1"],
])
def test_invalid_configuration_exits_2(argv, capsys):
    code = None
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    err = capsys.readouterr().err
    assert code == 2
    assert json.loads(err.strip().splitlines()[-1])["schema"] == 1


def test_config_file_malformed(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("alpha 0.2\n")
    assert run(["solve", "--config", str(cfg)], capsys)[0] == 2
    assert run(["solve", "--config", str(tmp_path / "missing.cfg")], capsys)[0] == 2


def test_nonconvergence_exit_3_with_partial_report(tmp_path, capsys):
    out = tmp_path / "res.json"
    code, _, err = run(["solve", "--alpha", "0.3", "--max-iter", "2", "--out", str(out)], capsys)
    assert code == 3
    doc = json.loads(out.read_text())
    assert doc["status"] == "failed"
    assert doc["error"]["type"] == "NoConvergence"
    assert len(doc["self_consistency"]["e_param_history"]) >= 2
    assert json.loads(err)["error"]["type"] == "NoConvergence"


def test_no_bound_state_exit_3(capsys):
    code, out, _ = run(["solve", "--alpha", "0.3", "--charge-sign", "-1"], capsys)
    assert code == 3
    assert json.loads(out)["error"]["type"] == "NoBoundState"


# ---------------------------------------------------------------- scan


def test_scan_empty_range_header_only(capsys):
    code, out, _ = run(["scan", "--alpha-count", "0"], capsys)
    assert code == 0
    rows = data_rows(out)
    assert rows == [cli.SCAN_COLUMNS]


def test_scan_small_couplings_deterministic(tmp_path, capsys):
    argv = ["scan", "--alpha-min", "0.001", "--alpha-max", "0.1", "--alpha-count", "3", "--l-values", "0",
            "--n-max", "1", "--mesh-points", "12"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(argv + ["--out", str(a)]) == 0
    assert cli.main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    meta = json.loads((tmp_path / "a.csv.meta.json").read_text())
    assert "created_utc" in meta
    assert "created" not in a.read_text()
    rows = data_rows(a.read_text())
    header, body = rows[0], rows[1:]
    assert len(body) == 3
    col = {name: i for i, name in enumerate(header)}
    for row in body:
        assert row[col["status"]] == "ok"
        assert row[col["anomalous_candidates"]] == "0"
        assert int(row[col["coulomb_like"]]) == 2
        assert row[col["branch"]] == "B_infinite"
        assert row[col["eq19_satisfiable"]] == "False"


def test_scan_row_failure_is_recorded(monkeypatch, capsys):
    def broken(params, *args, **kwargs):
        if params.alpha > 0.05:
            raise RuntimeError("synthetic failure")
        return []

    monkeypatch.setattr(cli, "scan_extra_levels", broken)
    code, out, _ = run(["scan", "--alpha-min", "0.01", "--alpha-max", "0.1", "--alpha-count", "2",
                        "--l-values", "0", "--jobs", "1"], capsys)
    assert code == 0
    body = data_rows(out)[1:]
    assert body[0][-1] == "ok"
    assert body[1][-1].startswith("error: RuntimeError")


def test_jobs_default_from_environment(monkeypatch):
    monkeypatch.setenv(cli.JOBS_ENV, "3")
    assert cli.resolve_config("scan", {}).options["jobs"] == 3
    monkeypatch.delenv(cli.JOBS_ENV)
    assert cli.resolve_config("scan", {}).options["jobs"] == 1
    assert cli.resolve_config("scan", {"jobs": "2"}).options["jobs"] == 2


def test_parallel_scan_matches_serial(capsys):
    argv = ["scan", "--alpha-min", "0.05", "--alpha-max", "0.1", "--alpha-count", "2", "--l-values", "0",
            "--n-max", "0", "--mesh-points", "8"]
    _, serial, _ = run(argv + ["--jobs", "1"], capsys)
    _, parallel, _ = run(argv + ["--jobs", "2"], capsys)
    assert data_rows(serial) == data_rows(parallel)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quasispec", "specfun", "f", "--x", "1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["result"]["value"] == pytest.approx(0.6215, abs=1e-4)
