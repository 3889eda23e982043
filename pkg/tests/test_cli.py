import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from empsup.cli import RECORD_COLUMNS, TABLE_COLUMNS, RunManifest, main
from empsup.harness import ExperimentConfig, run_experiment
from empsup.limits import symmetric_unit_grid


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_sup_from_file(tmp_path, capsys):
    f = tmp_path / "s.txt"
    f.write_text("0.1\n0.2\n")
    code, out, _ = run(capsys, "sup", f)
    res = json.loads(out)
    assert code == 0
    assert res["value"] == pytest.approx(2.828427, abs=1e-6) and res["location"] == 0.2
    assert set(res) == {"n", "value", "location", "index", "side"}


def test_sup_inline_and_unweighted(capsys):
    code, out, _ = run(capsys, "sup", "--values", "0.5")
    assert code == 0 and json.loads(out)["value"] == 1.0
    code, out, _ = run(capsys, "sup", "--values", "0.1,0.2", "--weighted", "false")
    assert json.loads(out)["value"] == pytest.approx(1.131371, abs=1e-6)


@pytest.mark.parametrize("content,msg", [("", "empty sample"), ("0.1\nabc\n", "malformed"), ("0.5\n1.0\n", "(0, 1)")])
def test_sup_errors(tmp_path, capsys, content, msg):
    f = tmp_path / "bad.txt"
    f.write_text(content)
    code, _, err = run(capsys, "sup", f)
    assert code == 2 and msg in err


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_experiment_outputs(tmp_path, capsys):
    out = tmp_path / "run"
    code, _, _ = run(capsys, "experiment", "--n", "16", "--reps", "3", "--seed", "42", "--out", out)
    assert code == 0
    rows = _read_csv(out / "records.csv")
    assert rows[0] == RECORD_COLUMNS
    assert len(rows) == 4
    raw = (out / "records.csv").read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    m = RunManifest.from_json((out / "manifest.json").read_text())
    assert m.command == "experiment" and m.master_seed == 42 and m.outputs == ["records.csv"]
    assert RunManifest.from_json(m.to_json()) == m
    assert m.to_json() == (out / "manifest.json").read_text()


def test_experiment_values_roundtrip(tmp_path, capsys):
    out = tmp_path / "run"
    run(capsys, "experiment", "--n", "16,40", "--reps", "5", "--seed", "7", "--out", out)
    recs = run_experiment(ExperimentConfig(n_values=(16, 40), replications=5, master_seed=7))
    rows = _read_csv(out / "records.csv")[1:]
    for rec, row in zip(recs, rows):
        assert float(row[2]) == rec.v and float(row[3]) == rec.tau
        assert float(row[6]) == rec.normalized and row[7] == rec.side.value


def test_experiment_rerun_from_manifest(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "experiment", "--n", "16", "--reps", "3", "--seed", "1", "--out", a)
    run(capsys, "experiment", "--config", a / "manifest.json", "--out", b, "--workers", "3")
    assert (a / "records.csv").read_bytes() == (b / "records.csv").read_bytes()


def test_experiment_unweighted_has_empty_normalized(tmp_path, capsys):
    out = tmp_path / "u"
    run(capsys, "experiment", "--n", "16", "--reps", "3", "--weighted", "false", "--out", out)
    rows = _read_csv(out / "records.csv")[1:]
    assert all(r[6] == "" for r in rows)


def test_experiment_validation_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "experiment", "--n", "10", "--reps", "3", "--out", tmp_path / "x")
    assert code == 2
    code, _, _ = run(capsys, "experiment", "--n", "100", "--reps", "0", "--out", tmp_path / "x")
    assert code == 2
    cfg = tmp_path / "c.json"
    cfg.write_text('{"bogus": 1}')
    code, _, _ = run(capsys, "experiment", "--config", cfg, "--out", tmp_path / "x")
    assert code == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--n", 100, "--a", 0.5, "--lam", 1, "--reps", 500)
    rep = json.loads(out)
    assert code == 0 and rep["pass"] is True and rep["rhs"] == pytest.approx(0.02)
    assert set(rep) == {"lhs_hat", "stderr", "rhs", "pass"}
    code, _, _ = run(capsys, "verify", "--n", 100, "--a", 0.7, "--lam", 1)
    assert code == 2
    code, _, _ = run(capsys, "verify", "--n", 100, "--a", 0.3, "--lam", 0)
    assert code == 2
    code, out, _ = run(capsys, "verify", "--n", 37, "--a", 0.2, "--lam", 10, "--reps", 200)
    assert code == 0 and json.loads(out)["lhs_hat"] == 0.0


def test_verify_failure_exit_1(capsys, monkeypatch):
    from empsup import cli
    from empsup.harness import MaximalInequalityReport

    monkeypatch.setattr(cli, "verify_maximal_inequality", lambda *a, **k: MaximalInequalityReport(0.5, 0.01, 0.1, False))
    code, _, _ = run(capsys, "verify", "--n", 100, "--a", 0.3, "--lam", 1)
    assert code == 1


def test_density_csv(tmp_path, capsys):
    out = tmp_path / "d"
    code, _, _ = run(capsys, "density", "--grid", "11x7", "--trunc-j", 50, "--ymax", 3, "--out", out)
    assert code == 0
    rows = _read_csv(out / "density.csv")
    assert rows[0] == ["x", "y", "f"]
    data = np.array(rows[1:], dtype=float)
    assert data.shape == (77, 3)
    assert np.all(data[data[:, 1] == 0.0][:, 2] == 0.0)
    # reflect x and re-sort: same file content
    mirrored = data.copy()
    mirrored[:, 0] = 1.0 - mirrored[:, 0]
    order = np.lexsort((mirrored[:, 1], mirrored[:, 0]))
    assert np.array_equal(mirrored[order], data)
    assert np.array_equal(np.unique(data[:, 0]), symmetric_unit_grid(11))


def test_density_invalid_grid(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["density", "--grid", "abc", "--out", str(tmp_path)])
    assert e.value.code == 2
    code, _, _ = run(capsys, "density", "--grid", "0x5", "--out", tmp_path)
    assert code == 2


def test_table_csv(tmp_path, capsys):
    out = tmp_path / "t"
    code, _, _ = run(capsys, "table", "--n", "100,1000", "--reps", 200, "--alpha", 0.1, "--seed", 3, "--out", out)
    assert code == 0
    rows = _read_csv(out / "table.csv")
    assert rows[0] == TABLE_COLUMNS and len(rows) == 3


def test_module_entry_point(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("0.5\n")
    res = subprocess.run([sys.executable, "-m", "empsup", "sup", str(f)], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["value"] == 1.0
