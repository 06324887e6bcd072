import csv
import json
import math

import numpy as np
import pytest

from transcoherent.cli import main


def run(argv):
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def test_state_ground_two(capsys):
    assert run(["state", "--ground", "--nmax", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    amps = np.array(data["amps"])
    assert data["n_cut"] == 2 and amps.shape == (3, 2)
    np.testing.assert_allclose(np.sum(amps**2, axis=1), [0.4015, 0.5000, 0.0986], atol=1e-4)
    assert data["metadata"]["n_max"] == 2


@pytest.mark.parametrize("argv", [
    ["state", "--ground", "--nmax", "0"],
    ["state", "--excited"],
    ["state", "--excited", "--nmin", "0", "--nmax", "2"],
    ["fig", "9"],
    ["fig", "3", "--grid", "1"],
    ["verify", "--tol", "0"],
    ["catalyze", "--nbar", "5", "--events", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(argv):
    assert run(argv) == 2


def test_state_file_output(tmp_path):
    assert run(["state", "--excited", "--nmin", "3", "--out", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "state.json").read_text())
    assert data["n_cut"] == 15
    assert data["metadata"]["spec"] == "excited"
    assert abs(data["metadata"]["t"] - math.pi / 2) < 1e-15


def test_truncated_state(capsys):
    assert run(["state", "--time", str(math.pi / math.sqrt(13))]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["n_cut"] == 13


def test_verify_default_passes(tmp_path):
    assert run(["verify", "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "verify_report.json").read_text())
    assert report["passed"]
    assert len(report["checks"]) >= 20
    assert len({c["name"] for c in report["checks"]}) == len(report["checks"])


def test_verify_below_double_precision_fails(tmp_path):
    assert run(["verify", "--tol", "1e-16", "--out", str(tmp_path)]) == 1
    report = json.loads((tmp_path / "verify_report.json").read_text())
    assert not report["passed"]


def test_fig3_contents(tmp_path):
    assert run(["fig", "3", "--out", str(tmp_path), "--grid", "60"]) == 0
    head, trunc = read_csv(tmp_path / "fig3_truncated.csv")
    assert head == ["omega0_t", "one_minus_C"]
    assert np.all(trunc[:, 1] <= 3e-3)
    _, coh = read_csv(tmp_path / "fig3_coherent.csv")
    assert np.all(coh[:, 1] > 0)


def test_fig1_distributions(tmp_path):
    assert run(["fig", "1", "--out", str(tmp_path)]) == 0
    _, rows = read_csv(tmp_path / "fig1_transcoherent_nmax2.csv")
    np.testing.assert_allclose(rows[:, 1], [0.4015, 0.5000, 0.0986], atol=1e-4)
    assert (tmp_path / "fig1_coherent_nmax100.csv").exists()


def test_fig_json_format(tmp_path):
    assert run(["fig", "2", "--format", "json", "--out", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "fig2_transcoherent_nmin3.json").read_text())
    assert data["metadata"]["n_max"] == 15
    assert abs(sum(r[1] for r in data["rows"]) - 1) < 1e-12


def test_fig5_small_run(tmp_path):
    assert run(["fig", "5", "--nbar", "6", "--grid", "128", "--out", str(tmp_path)]) == 0
    head, a = read_csv(tmp_path / "fig5_transcoherent_nbar6.csv")
    _, b = read_csv(tmp_path / "fig5_coherent_nbar6.csv")
    assert head == ["event", "t_star", "p_event", "p_cumulative"]
    assert a.shape[0] == 12
    assert np.all(a[:, 3] > b[:, 3])


def test_reruns_are_byte_identical(tmp_path):
    for d in ("a", "b"):
        assert run(["fig", "3", "--grid", "40", "--omega-ratio", "0.3", "--out", str(tmp_path / d)]) == 0
        assert run(["catalyze", "--nmax", "20", "--events", "4", "--out", str(tmp_path / d)]) == 0
    for name in ("fig3_truncated.csv", "fig3_coherent.csv",
                 "catalysis_transcoherent.csv", "catalysis_transcoherent.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_catalyze_compare(tmp_path):
    assert run(["catalyze", "--nbar", "8", "--events", "6", "--compare", "--out", str(tmp_path)]) == 0
    _, a = read_csv(tmp_path / "catalysis_transcoherent.csv")
    _, b = read_csv(tmp_path / "catalysis_coherent.csv")
    assert np.all(a[:, 3] > b[:, 3])
    data = json.loads((tmp_path / "catalysis_coherent.json").read_text())
    assert len(data["events"]) == 6


def test_catalyze_desk_scale(tmp_path):
    assert run(["catalyze", "--nbar", "25", "--events", "50", "--out", str(tmp_path)]) == 0
    _, rows = read_csv(tmp_path / "catalysis_transcoherent.csv")
    assert rows.shape[0] == 50
    assert rows[-1, 3] >= 0.9
