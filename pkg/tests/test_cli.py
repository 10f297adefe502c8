"""Command-line surface: flags, config files, outputs, exit codes."""

import json

import pytest

from cyberevo import cli

REF_FLAGS = [
    "--w", "0.98", "--ca", "0.51", "--cd", "0.20",
    "--ba", "0.90", "--bd", "0.79", "--v", "0.26",
]


def _stdout_json(capsys):
    text = capsys.readouterr().out
    assert text.startswith("### ")
    return json.loads(text.split("\n", 1)[1])


def test_version_flag(capsys):
    assert cli.main(["--version"]) == 0
    assert "cyberevo" in capsys.readouterr().out


def test_missing_subcommand_is_usage_error(capsys):
    assert cli.main([]) == 2


def test_unknown_flag_is_usage_error(capsys):
    assert cli.main(["analyze", "--nope", "1"]) == 2


def test_analyze_json_report(capsys):
    assert cli.main(["analyze", *REF_FLAGS]) == 0
    doc = _stdout_json(capsys)
    result = doc["result"]
    assert result["stable_set"] == ["E4"]
    assert result["interior"] is None
    welfare = result["welfare"]
    assert welfare["Defence,NoAttack"] == pytest.approx(0.59)
    assert welfare["Defence,Attack"] == pytest.approx(-0.5638)
    kinds = [entry["kind"] for entry in result["equilibria"]]
    assert kinds == ["E1", "E2", "E3", "E4"]
    assert doc["provenance"]["command"] == "analyze"
    assert doc["provenance"]["config"]["game"]["v"] == 0.26


def test_analyze_csv_report(capsys):
    assert cli.main(["analyze", *REF_FLAGS, "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert "### equilibria.csv" in out
    assert "E4,1.000000,1.000000,Stable" in out
    assert '"Defence,NoAttack",0.590000' in out


def test_analyze_missing_params(capsys):
    assert cli.main(["analyze", "--w", "0.9"]) == 2
    err = capsys.readouterr().err
    assert "missing required game parameter" in err
    assert "game.ca" in err


def test_analyze_constraint_violation_names_it(capsys):
    flags = ["--w", "0.5", "--ca", "0.6", "--cd", "0.2",
             "--ba", "0.9", "--bd", "0.4", "--v", "0.5"]
    assert cli.main(["analyze", *flags]) == 3
    assert "c_a < w" in capsys.readouterr().err


def test_analyze_interior_point_reported(capsys):
    flags = ["--w", "0.98", "--ca", "0.69", "--cd", "0.54",
             "--ba", "0.79", "--bd", "0.72", "--v", "0.15"]
    assert cli.main(["analyze", *flags]) == 0
    result = _stdout_json(capsys)["result"]
    assert result["stable_set"] == ["E2", "E3"]
    assert result["interior"]["beta"] == pytest.approx(0.843882, abs=1e-6)
    e5 = result["equilibria"][-1]
    assert e5["kind"] == "E5"
    assert abs(e5["eigen"]["lambda1"]["re"]) == pytest.approx(0.041501, abs=1e-5)


def test_config_file_with_flag_override(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({
        "game": {"w": 0.98, "ca": 0.51, "cd": 0.20,
                 "ba": 0.90, "bd": 0.79, "v": 0.5},
    }))
    assert cli.main(["analyze", "--config", str(config)]) == 0
    assert _stdout_json(capsys)["result"]["stable_set"] == ["E3"]
    assert cli.main(["analyze", "--config", str(config), "--v", "0.26"]) == 0
    assert _stdout_json(capsys)["result"]["stable_set"] == ["E4"]


def test_config_file_errors(tmp_path, capsys):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{nope")
    assert cli.main(["analyze", "--config", str(bad_json)]) == 2
    assert "not valid JSON" in capsys.readouterr().err

    unknown_section = tmp_path / "sec.json"
    unknown_section.write_text(json.dumps({"bogus": {}}))
    assert cli.main(["analyze", "--config", str(unknown_section)]) == 2
    assert "unknown config section: bogus" in capsys.readouterr().err

    unknown_key = tmp_path / "key.json"
    unknown_key.write_text(json.dumps({"ensemble": {"coutn": 2}}))
    assert cli.main(["analyze", "--config", str(unknown_key)]) == 2
    assert "unknown config key: ensemble.coutn" in capsys.readouterr().err

    bad_type = tmp_path / "type.json"
    bad_type.write_text(json.dumps({"ensemble": {"count": "many"}}))
    assert cli.main(["analyze", "--config", str(bad_type)]) == 2
    assert "ensemble.count" in capsys.readouterr().err


EXPECTED_ENSEMBLE_FILES = [
    "ensemble_summary.json",
    "fig6_counts.csv",
    "fig6_correlation.csv",
    "fig7_ratios.csv",
    "fig8_vcurves.csv",
    "fig9_costs.csv",
    "fig12_v_w.csv",
    "fig14_benefits.csv",
    "fig17_welfare.csv",
    "fig18_welfare_params.csv",
]


def test_ensemble_writes_expected_files(tmp_path, capsys):
    out = tmp_path / "run"
    assert cli.main(["ensemble", "--count", "300", "--seed", "1",
                     "--out", str(out)]) == 0
    for name in EXPECTED_ENSEMBLE_FILES:
        assert (out / name).is_file(), name
    summary = json.loads((out / "ensemble_summary.json").read_text())
    assert summary["result"]["config"]["count"] == 300
    counts = (out / "fig6_counts.csv").read_text().splitlines()
    assert counts[3] == "stable_count,games"
    assert counts[4].startswith("0,")


def test_ensemble_reruns_byte_identical(tmp_path, capsys):
    first, second = tmp_path / "a", tmp_path / "b"
    assert cli.main(["ensemble", "--count", "300", "--out", str(first)]) == 0
    assert cli.main(["ensemble", "--count", "300", "--out", str(second),
                     "--workers", "2"]) == 0
    for name in EXPECTED_ENSEMBLE_FILES:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name


def test_ensemble_seed_changes_results(tmp_path, capsys):
    one, two = tmp_path / "s1", tmp_path / "s2"
    assert cli.main(["ensemble", "--count", "300", "--seed", "1",
                     "--out", str(one)]) == 0
    assert cli.main(["ensemble", "--count", "300", "--seed", "2",
                     "--out", str(two)]) == 0
    digest = [
        json.loads((d / "ensemble_summary.json").read_text())["result"]["records_digest"]
        for d in (one, two)
    ]
    assert digest[0] != digest[1]


def test_ensemble_rejects_bad_count(capsys):
    assert cli.main(["ensemble", "--count", "0"]) == 2
    assert "count" in capsys.readouterr().err


def test_out_path_under_file_fails_before_compute(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("x")
    out = blocker / "sub"
    # A huge count would take minutes; failing fast proves the write probe
    # runs before any sampling.
    assert cli.main(["ensemble", "--count", "100000000", "--out", str(out)]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_phase_svg_stdout(capsys):
    assert cli.main(["phase", *REF_FLAGS]) == 0
    out = capsys.readouterr().out
    assert out.startswith("### phase.svg")
    assert "<svg" in out and "</svg>" in out


def test_phase_writes_bundle(tmp_path, capsys):
    out = tmp_path / "phase"
    assert cli.main(["phase", *REF_FLAGS, "--start", "0.05,0.95",
                     "--resolution", "9", "--out", str(out)]) == 0
    for name in ("phase.svg", "phase_field.csv", "phase_markers.csv",
                 "phase_trajectories.csv", "phase_report.json"):
        assert (out / name).is_file(), name
    markers = (out / "phase_markers.csv").read_text()
    assert "E4,1.000000,1.000000,Stable" in markers
    field_lines = (out / "phase_field.csv").read_text().splitlines()
    assert len(field_lines) == 3 + 1 + 81  # provenance, header, 9x9 lattice
    trajectories = (out / "phase_trajectories.csv").read_text().splitlines()
    assert trajectories[4].startswith("0,0.000000,0.050000,0.950000")


def test_phase_rejects_tiny_resolution(capsys):
    assert cli.main(["phase", *REF_FLAGS, "--resolution", "1"]) == 2
    assert "resolution" in capsys.readouterr().err


def test_phase_rejects_malformed_start(capsys):
    assert cli.main(["phase", *REF_FLAGS, "--start", "0.5"]) == 2
    assert "--start" in capsys.readouterr().err


def test_abm_json_and_determinism(tmp_path, capsys):
    args = ["abm", *REF_FLAGS, "--population", "100", "--steps", "20000",
            "--burn-in", "5000", "--seed", "9"]
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert cli.main([*args, "--out", str(out1)]) == 0
    assert cli.main([*args, "--out", str(out2)]) == 0
    for name in ("abm_result.json", "abm_means.csv", "abm_trajectory.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name
    doc = json.loads((out1 / "abm_result.json").read_text())
    assert 0.8 <= doc["result"]["mean_beta"] <= 1.0
    assert doc["provenance"]["config"]["abm"]["seed"] == 9


def test_abm_rejects_burn_in_not_below_steps(capsys):
    assert cli.main(["abm", *REF_FLAGS, "--steps", "100",
                     "--burn-in", "100"]) == 2
    assert "burn_in" in capsys.readouterr().err


def test_fines_tables_named_by_level(tmp_path, capsys):
    out = tmp_path / "fines"
    assert cli.main(["fines", "--count", "200", "--levels", "0.1,0.5,0.25",
                     "--out", str(out)]) == 0
    for name in ("fig15_fines_0p1.csv", "fig16_fines_0p5.csv",
                 "fines_0p25.csv", "fines_summary.json"):
        assert (out / name).is_file(), name
    doc = json.loads((out / "fines_summary.json").read_text())
    assert set(doc["result"]) == {"0.1", "0.5", "0.25"}
    assert doc["result"]["0.5"]["kind_counts"]["E1"] == 0


def test_fines_rejects_bad_levels(capsys):
    assert cli.main(["fines", "--count", "10", "--levels", "0.1,x"]) == 2
    assert "--levels" in capsys.readouterr().err


def test_integration_failure_maps_to_compute_exit_code(monkeypatch, capsys):
    from cyberevo.errors import IntegrationError

    def boom(args):
        raise IntegrationError("non-finite state at step 3")

    monkeypatch.setattr(cli, "cmd_analyze", boom)
    assert cli.main(["analyze", *REF_FLAGS]) == 4
    assert "non-finite state at step 3" in capsys.readouterr().err


def test_provenance_has_no_timestamp_and_omits_runtime_plumbing(tmp_path):
    out = tmp_path / "p"
    cli.main(["ensemble", "--count", "100", "--out", str(out), "--workers", "2"])
    header = (out / "fig7_ratios.csv").read_text().splitlines()[:3]
    joined = "\n".join(header)
    assert "workers" not in joined
    assert str(out) not in joined
    doc = json.loads((out / "ensemble_summary.json").read_text())
    assert "output" not in doc["provenance"]["config"]
    assert "workers" not in doc["provenance"]["config"]["ensemble"]
