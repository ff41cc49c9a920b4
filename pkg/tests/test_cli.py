"""Command-line interface tests, driven through main() in-process."""

import json

import pytest

from plantprop.benchmarks import FUNCTION_NAMES
from plantprop.cli import main

TINY_CONFIG = {
    "functions": ["sphere"],
    "factors": [150, "vanilla"],
    "repeats": 2,
    "budget": 120,
    "pop_size": 10,
    "n_max": 3,
    "base_seed": 5,
}


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("PPA_SEED", raising=False)


def _config_file(tmp_path, **overrides):
    data = dict(TINY_CONFIG, **overrides)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


# -- run -----------------------------------------------------------------------


def test_run_output_shape(capsys):
    code = main(
        ["run", "--function", "sphere", "--budget", "200", "--pop-size", "10",
         "--factor", "100", "--seed", "3"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "function     sphere (n=2)" in out
    assert "schedule     linear, factor 100" in out
    assert "seed         3" in out
    assert "best value   " in out
    assert "evaluations  200" in out


def test_run_is_deterministic(capsys):
    argv = ["run", "--function", "rastrigin", "--budget", "300",
            "--pop-size", "15", "--seed", "9"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_run_defaults_to_vanilla(capsys):
    main(["run", "--function", "sphere", "--budget", "60",
          "--pop-size", "10", "--seed", "1"])
    assert "schedule     vanilla" in capsys.readouterr().out


def test_run_unknown_function_fails_and_lists_names(capsys):
    code = main(["run", "--function", "nosuch", "--seed", "1"])
    err = capsys.readouterr().err
    assert code == 1
    assert err.startswith("error:")
    assert "nosuch" in err
    assert "sphere" in err  # the message names the valid identifiers


def test_run_factor_and_vanilla_conflict():
    with pytest.raises(SystemExit) as exc:
        main(["run", "--function", "sphere", "--factor", "100", "--vanilla"])
    assert exc.value.code == 2


def test_run_budget_equal_to_popsize(capsys):
    code = main(["run", "--function", "sphere", "--budget", "30", "--seed", "2"])
    assert code == 0
    assert "evaluations  30" in capsys.readouterr().out


def test_run_rejects_undersized_budget(capsys):
    code = main(["run", "--function", "sphere", "--budget", "10", "--seed", "2"])
    assert code == 1
    assert "budget" in capsys.readouterr().err


def test_run_writes_trajectory(tmp_path, capsys):
    out_csv = tmp_path / "traj.csv"
    main(["run", "--function", "ackley", "--budget", "150", "--pop-size", "10",
          "--seed", "4", "--trajectory", str(out_csv)])
    lines = out_csv.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "evaluation,best_value"
    assert len(lines) >= 2
    assert lines[-1].startswith("150,")
    values = [float(line.split(",")[1]) for line in lines[1:]]
    assert values == sorted(values, reverse=True) or all(
        a >= b for a, b in zip(values, values[1:])
    )


def test_run_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("PPA_SEED", "77")
    main(["run", "--function", "sphere", "--budget", "60", "--pop-size", "10"])
    assert "seed         77" in capsys.readouterr().out


def test_run_seed_flag_beats_environment(monkeypatch, capsys):
    monkeypatch.setenv("PPA_SEED", "77")
    main(["run", "--function", "sphere", "--budget", "60", "--pop-size", "10",
          "--seed", "5"])
    assert "seed         5" in capsys.readouterr().out


def test_run_rejects_malformed_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("PPA_SEED", "lots")
    code = main(["run", "--function", "sphere", "--budget", "60",
                 "--pop-size", "10"])
    assert code == 1
    assert "PPA_SEED" in capsys.readouterr().err


# -- sweep ---------------------------------------------------------------------


def test_sweep_config_writes_outputs(tmp_path, capsys):
    config = _config_file(tmp_path)
    out_dir = tmp_path / "out"
    code = main(["sweep", "--config", str(config), "--out", str(out_dir),
                 "--jobs", "1"])
    assert code == 0
    csv_text = (out_dir / "results.csv").read_text(encoding="utf-8")
    lines = csv_text.splitlines()
    assert lines[0] == "function,factor,median,run_final_1,run_final_2"
    assert len(lines) == 3
    assert lines[1].startswith("sphere,150,")
    assert lines[2].startswith("sphere,inf,")

    manifest = json.loads((out_dir / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["spec"]["base_seed"] == 5
    assert len(manifest["cells"]) == 2

    progress = capsys.readouterr().out
    assert "[1/2]" in progress and "[2/2]" in progress


def test_sweep_quiet_suppresses_progress(tmp_path, capsys):
    config = _config_file(tmp_path)
    main(["sweep", "--config", str(config), "--out", str(tmp_path / "o"),
          "--jobs", "1", "--quiet"])
    out = capsys.readouterr().out
    assert "[1/2]" not in out
    assert "wrote" in out


def test_sweep_jobs_do_not_change_results(tmp_path):
    config = _config_file(tmp_path)
    main(["sweep", "--config", str(config), "--out", str(tmp_path / "a"),
          "--jobs", "1", "--quiet"])
    main(["sweep", "--config", str(config), "--out", str(tmp_path / "b"),
          "--jobs", "2", "--quiet"])
    assert (tmp_path / "a/results.csv").read_bytes() == (
        tmp_path / "b/results.csv"
    ).read_bytes()


def test_sweep_base_seed_flag_overrides_config(tmp_path):
    config = _config_file(tmp_path)
    main(["sweep", "--config", str(config), "--out", str(tmp_path / "o"),
          "--jobs", "1", "--quiet", "--base-seed", "42"])
    manifest = json.loads(
        (tmp_path / "o/manifest.json").read_text(encoding="utf-8")
    )
    assert manifest["spec"]["base_seed"] == 42


def test_sweep_env_seed_applies_to_config(tmp_path, monkeypatch):
    monkeypatch.setenv("PPA_SEED", "88")
    config = _config_file(tmp_path)
    main(["sweep", "--config", str(config), "--out", str(tmp_path / "o"),
          "--jobs", "1", "--quiet"])
    manifest = json.loads(
        (tmp_path / "o/manifest.json").read_text(encoding="utf-8")
    )
    assert manifest["spec"]["base_seed"] == 88


def test_sweep_rerun_from_manifest_is_identical(tmp_path):
    config = _config_file(tmp_path)
    main(["sweep", "--config", str(config), "--out", str(tmp_path / "a"),
          "--jobs", "1", "--quiet"])
    main(["sweep", "--from-manifest", str(tmp_path / "a/manifest.json"),
          "--out", str(tmp_path / "b"), "--jobs", "1", "--quiet"])
    assert (tmp_path / "a/results.csv").read_bytes() == (
        tmp_path / "b/results.csv"
    ).read_bytes()


def test_sweep_bad_config_fails_with_diagnostic(tmp_path, capsys):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"functions": ["sphere"]}), encoding="utf-8")
    code = main(["sweep", "--config", str(path), "--out", str(tmp_path / "o")])
    assert code == 1
    err = capsys.readouterr().err
    assert "factors" in err and "spec.json" in err


def test_sweep_no_vanilla_requires_preset(tmp_path, capsys):
    config = _config_file(tmp_path)
    code = main(["sweep", "--config", str(config), "--out", str(tmp_path / "o"),
                 "--no-vanilla"])
    assert code == 1
    assert "--no-vanilla" in capsys.readouterr().err


def test_sweep_requires_a_source(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--out", str(tmp_path / "o")])
    assert exc.value.code == 2


# -- plot ----------------------------------------------------------------------


def test_plot_writes_svgs(tmp_path, capsys):
    config = _config_file(tmp_path)
    out_dir = tmp_path / "out"
    main(["sweep", "--config", str(config), "--out", str(out_dir),
          "--jobs", "1", "--quiet"])
    capsys.readouterr()
    code = main(["plot", str(out_dir / "results.csv")])
    assert code == 0
    assert (out_dir / "sphere.svg").exists()
    assert "sphere.svg" in capsys.readouterr().out


def test_plot_combined_and_custom_out(tmp_path):
    config = _config_file(tmp_path)
    out_dir = tmp_path / "out"
    main(["sweep", "--config", str(config), "--out", str(out_dir),
          "--jobs", "1", "--quiet"])
    plots = tmp_path / "plots"
    main(["plot", str(out_dir / "results.csv"), "--out", str(plots),
          "--combined"])
    assert (plots / "heatmap_combined.svg").exists()
    assert not (plots / "sphere.svg").exists()


def test_plot_malformed_csv_fails_with_location(tmp_path, capsys):
    bad = tmp_path / "results.csv"
    bad.write_text(
        "function,factor,median,run_final_1\nsphere,oops,1,1\n",
        encoding="utf-8",
    )
    code = main(["plot", str(bad)])
    assert code == 1
    err = capsys.readouterr().err
    assert "results.csv:2" in err
    assert "factor" in err


def test_plot_missing_file(tmp_path, capsys):
    code = main(["plot", str(tmp_path / "absent.csv")])
    assert code == 1
    assert "cannot read" in capsys.readouterr().err


# -- list-functions and help -----------------------------------------------------


def test_list_functions_table(capsys):
    code = main(["list-functions"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert len(out) == 1 + 14
    assert out[0].startswith("name")
    names = [line.split()[0] for line in out[1:]]
    assert names == list(FUNCTION_NAMES)
    sphere_row = next(line for line in out if line.startswith("sphere"))
    assert ">=2" in sphere_row
    branin_row = next(line for line in out if line.startswith("branin"))
    assert " 2 " in branin_row


@pytest.mark.parametrize(
    "argv",
    [
        ["--help"],
        ["run", "--help"],
        ["sweep", "--help"],
        ["plot", "--help"],
        ["list-functions", "--help"],
    ],
)
def test_help_exits_zero(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 0


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "plantprop" in capsys.readouterr().out


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "plantprop", "list-functions"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "sphere" in proc.stdout
