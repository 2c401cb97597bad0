"""Command-line interface: exit codes, determinism, presets, scenario files."""
import json
import math

import pytest

from cpa_sim import cli, scenario_io


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(tmp_path, name, payload) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


SINGLE_PHOTON_FILE = {
    "schema": 1,
    "engine": "FOCK",
    "scenario": {"kind": "SINGLE_PHOTON", "delta_theta": "0.5pi"},
    "absorber": {"r": -0.5},
    "numerics": {"cutoff": 10},
}


def test_table1_passes(capsys):
    code, out, _ = run_cli(capsys, "table1")
    assert code == 0
    assert "13/13 rows passed" in out


def test_table1_regression_mismatch_exits_3(capsys, monkeypatch):
    from cpa_sim import table1

    def broken_rows(cutoff=30):
        row = table1.RowResult("synthetic drifted row")
        row.approx("drifted value", 1.0, 0.9, 1e-12)
        return [row]

    monkeypatch.setattr(table1, "run_table1", broken_rows)
    code, out, _ = run_cli(capsys, "table1")
    assert code == 3
    assert "FAIL" in out


def test_table1_json_mode(capsys):
    code, out, _ = run_cli(capsys, "table1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert len(payload["rows"]) == 13


def test_run_single_photon_file(tmp_path, capsys):
    path = write_json(tmp_path, "sp.json", SINGLE_PHOTON_FILE)
    code, out, _ = run_cli(capsys, "run", path)
    assert code == 0
    payload = json.loads(out)
    assert payload["absorbed_distribution"]["1"] == pytest.approx(
        math.cos(math.pi / 4) ** 2, abs=1e-12
    )


def test_run_output_is_deterministic(tmp_path, capsys):
    path = write_json(tmp_path, "sp.json", SINGLE_PHOTON_FILE)
    _, first, _ = run_cli(capsys, "run", path)
    _, second, _ = run_cli(capsys, "run", path)
    assert first == second


def test_run_noon_four(tmp_path, capsys):
    payload = {
        "schema": 1,
        "engine": "FOCK",
        "scenario": {"kind": "NOON", "n": 4, "delta_theta": 0},
    }
    path = write_json(tmp_path, "noon.json", payload)
    code, out, _ = run_cli(capsys, "run", path)
    assert code == 0
    dist = json.loads(out)["absorbed_distribution"]
    assert dist["4"] == pytest.approx(0.125, abs=1e-12)
    assert dist["2"] == pytest.approx(0.75, abs=1e-12)
    assert dist["0"] == pytest.approx(0.125, abs=1e-12)


def test_run_gaussian_epr(tmp_path, capsys):
    payload = {
        "schema": 1,
        "engine": "GAUSSIAN",
        "scenario": {"kind": "EPR", "alpha_g": 0.0, "alpha_h": 0.0, "xi": 1.0},
    }
    path = write_json(tmp_path, "epr.json", payload)
    code, out, _ = run_cli(capsys, "run", path)
    assert code == 0
    result = json.loads(out)
    assert result["separability"]["duan_travelling"] == pytest.approx(
        2 * math.exp(-2.0), abs=1e-10
    )
    assert result["coherence_absorption"] == "undefined"


def test_run_malformed_field_reports_path(tmp_path, capsys):
    payload = {"schema": 1, "engine": "FOCK", "scenario": {"kind": "NOON", "n": "four"}}
    path = write_json(tmp_path, "bad.json", payload)
    code, _, err = run_cli(capsys, "run", path)
    assert code == 1
    assert "scenario.n" in err


def test_run_rejects_wrong_engine_kind(tmp_path, capsys):
    payload = {"schema": 1, "engine": "GAUSSIAN", "scenario": {"kind": "NOON", "n": 3}}
    path = write_json(tmp_path, "bad.json", payload)
    code, _, err = run_cli(capsys, "run", path)
    assert code == 1
    assert "scenario.kind" in err


def test_run_rejects_sweep_files(tmp_path, capsys):
    payload = dict(SINGLE_PHOTON_FILE)
    payload["sweep"] = {
        "parameter": "scenario.delta_theta",
        "start": 0,
        "stop": "2pi",
        "points": 4,
    }
    path = write_json(tmp_path, "sweep.json", payload)
    code, _, err = run_cli(capsys, "run", path)
    assert code == 1
    assert "sweep" in err


def test_run_cutoff_failure_exits_2(tmp_path, capsys):
    payload = {
        "schema": 1,
        "engine": "FOCK",
        "scenario": {"kind": "CAT_CAT", "alpha": 2.0},
        "numerics": {"cutoff": 31},
    }
    path = write_json(tmp_path, "cat.json", payload)
    code, _, err = run_cli(capsys, "run", path)
    assert code == 2
    assert "cutoff" in err.lower()


def test_sweep_fig6_values(tmp_path, capsys):
    out_path = str(tmp_path / "fig6.csv")
    code, _, _ = run_cli(capsys, "sweep", "--preset", "fig6", "--grid", "5", "--out", out_path)
    assert code == 0
    rows = [line.split(",") for line in open(out_path).read().strip().splitlines()]
    assert rows[0] == ["phi_k", "phi_minus_k", "standing_inseparability"]

    def value_at(phi_k, phi_mk):
        for r in rows[1:]:
            if abs(float(r[0]) - phi_k) < 1e-9 and abs(float(r[1]) - phi_mk) < 1e-9:
                return float(r[2])
        raise AssertionError(f"grid point ({phi_k}, {phi_mk}) missing")

    assert value_at(math.pi, 0.0) == pytest.approx(2 * math.exp(-2.0), abs=1e-9)
    assert value_at(0.0, 0.0) == pytest.approx(math.exp(2.0) + math.exp(-2.0), abs=1e-9)


def test_sweep_fig8_small_squeezing_is_classical(tmp_path, capsys):
    out_path = str(tmp_path / "fig8.csv")
    code, _, _ = run_cli(capsys, "sweep", "--preset", "fig8", "--grid", "9", "--out", out_path)
    assert code == 0
    rows = [line.split(",") for line in open(out_path).read().strip().splitlines()[1:]]
    for panel, theta, mag, xi, value in rows:
        assert value != "undefined"
        if panel == "a" and float(mag) > 0.5:
            classical = (1.0 + math.cos(float(theta))) / 2.0
            assert abs(float(value) - classical) < 0.02


def test_sweep_fig9a_interference_law(tmp_path, capsys):
    out_path = str(tmp_path / "fig9a.csv")
    code, _, _ = run_cli(capsys, "sweep", "--preset", "fig9a", "--grid", "9", "--out", out_path)
    assert code == 0
    lines = open(out_path).read().strip().splitlines()
    rows = [line.split(",") for line in lines[1:]]
    for theta, mag, value in rows:
        if float(mag) == 0.0:
            assert value == "undefined"  # no coherence at zero amplitude
        else:
            expected = (1.0 + math.cos(float(theta))) / 2.0
            assert abs(float(value) - expected) < 1e-10
            if abs(float(theta) - math.pi) < 1e-12:
                assert abs(float(value)) < 1e-12


def test_sweep_fig9b_ratio_pulls_towards_half(tmp_path, capsys):
    out_path = str(tmp_path / "fig9b.csv")
    code, _, _ = run_cli(capsys, "sweep", "--preset", "fig9b", "--grid", "7", "--out", out_path)
    assert code == 0
    rows = [line.split(",") for line in open(out_path).read().strip().splitlines()[1:]]
    at_zero = {float(r[1]): float(r[2]) for r in rows if abs(float(r[0])) < 1e-12}
    ratios = sorted(at_zero)
    assert all(at_zero[a] > at_zero[b] for a, b in zip(ratios, ratios[1:]))


def test_sweep_output_is_deterministic(tmp_path, capsys):
    first, second = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    run_cli(capsys, "sweep", "--preset", "fig6", "--grid", "7", "--out", first)
    run_cli(capsys, "sweep", "--preset", "fig6", "--grid", "7", "--out", second)
    assert open(first, "rb").read() == open(second, "rb").read()


def test_sweep_respects_thread_cap(tmp_path, capsys, monkeypatch):
    serial, threaded = str(tmp_path / "s.csv"), str(tmp_path / "t.csv")
    run_cli(capsys, "sweep", "--preset", "fig9a", "--grid", "7", "--out", serial)
    monkeypatch.setenv("CPA_THREADS", "4")
    run_cli(capsys, "sweep", "--preset", "fig9a", "--grid", "7", "--out", threaded)
    assert open(serial, "rb").read() == open(threaded, "rb").read()


def test_sweep_custom_single_photon(tmp_path, capsys):
    payload = dict(SINGLE_PHOTON_FILE)
    payload["sweep"] = {
        "parameter": "scenario.delta_theta",
        "start": 0,
        "stop": "2pi",
        "points": 9,
    }
    path = write_json(tmp_path, "sweep.json", payload)
    out_path = str(tmp_path / "sweep.csv")
    code, _, _ = run_cli(capsys, "sweep", "--custom", path, "--out", out_path)
    assert code == 0
    lines = open(out_path).read().strip().splitlines()
    assert lines[0].startswith("scenario.delta_theta,")
    for line in lines[1:]:
        cells = line.split(",")
        delta = float(cells[0])  # rounded to 12 significant digits in the CSV
        absorbed = float(cells[3])  # mean absorbed photons
        assert abs(absorbed - math.cos(delta / 2.0) ** 2) < 1e-10


def test_sweep_custom_requires_sweep_block(tmp_path, capsys):
    path = write_json(tmp_path, "plain.json", SINGLE_PHOTON_FILE)
    code, _, err = run_cli(capsys, "sweep", "--custom", path)
    assert code == 1
    assert "sweep" in err


def test_missing_file_is_validation_error(capsys):
    code, _, err = run_cli(capsys, "run", "/nonexistent/file.json")
    assert code == 1


def test_preset_requires_out(capsys):
    code, _, err = run_cli(capsys, "sweep", "--preset", "fig6")
    assert code == 1
    assert "--out" in err


def test_bad_arguments_exit_1(capsys):
    code, _, err = run_cli(capsys, "sweep")  # neither --preset nor --custom
    assert code == 1
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == 1


def test_angle_literals():
    assert scenario_io.parse_angle("pi", "x") == pytest.approx(math.pi)
    assert scenario_io.parse_angle("-0.5pi", "x") == pytest.approx(-math.pi / 2)
    assert scenario_io.parse_angle("2pi", "x") == pytest.approx(2 * math.pi)
    assert scenario_io.parse_angle(1.25, "x") == 1.25
    with pytest.raises(scenario_io.ScenarioFileError):
        scenario_io.parse_angle("halfpi", "x")


def test_complex_literals():
    assert scenario_io.parse_complex(2, "x") == 2 + 0j
    assert scenario_io.parse_complex([1, -1], "x") == 1 - 1j
    value = scenario_io.parse_complex({"mag": 2.0, "phase": "0.5pi"}, "x")
    assert value == pytest.approx(2j)
    with pytest.raises(scenario_io.ScenarioFileError):
        scenario_io.parse_complex("nope", "x")
