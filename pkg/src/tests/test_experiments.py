# src/tests/test_experiments.py
"""Config-driven sweeps and the report bundle."""
import json
from typing import get_args

import pytest

from tngeo.experiments import CSV_COLUMNS, EXPERIMENTS, make_experiment, run
from tngeo.experiments.sweeps import mps_coupling
from tngeo.states import DEFAULT_COUPLING
from tngeo.utils.config import ExperimentKind, parse_config


def _config(**kw):
    base = {
        "experiment": "mincut",
        "seed": 11,
        "geometry": {"kind": "mera", "N": 64},
        "sweep": {"L": [2, 4, 8, 16], "origins": 4},
    }
    base.update(kw)
    return parse_config(base)


def test_every_experiment_kind_is_registered():
    assert set(EXPERIMENTS) == set(get_args(ExperimentKind))


def test_bundle_files_and_csv_header(tmp_path):
    bundle = run(_config(), out_dir=tmp_path)
    assert sorted(p.name for p in tmp_path.iterdir()) == ["manifest.json", "reports.json", "sweep.csv"]
    lines = (tmp_path / "sweep.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + 4
    assert all(line.startswith("mincut,2,2,") for line in lines[1:])
    assert bundle.files["sweep"] == tmp_path / "sweep.csv"


def test_runs_are_byte_identical(tmp_path):
    cfg = _config(experiment="mps_corr", geometry={"kind": "mps", "chi": 3, "d": 2},
                  sweep={"r": [1, 2, 3, 4, 5, 6], "instances": 2})
    run(cfg, out_dir=tmp_path / "a")
    run(cfg, out_dir=tmp_path / "b")
    for name in ("sweep.csv", "reports.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_worker_count_does_not_change_results():
    sweep = {"r": [1, 2, 3, 4, 5], "instances": 4}
    serial = run(_config(experiment="mps_corr", geometry={"kind": "mps"}, sweep=sweep), write=False)
    threaded = run(_config(experiment="mps_corr", geometry={"kind": "mps"}, sweep=sweep, workers=3), write=False)
    assert serial.sweep_text() == threaded.sweep_text()
    assert [r["seed"] for r in serial.reports] == [r["seed"] for r in threaded.reports]


def test_instances_get_distinct_seeds():
    bundle = run(_config(experiment="mps_spectrum", geometry={"kind": "mps"}, sweep={"instances": 3}), write=False)
    seeds = [r["seed"] for r in bundle.reports]
    assert len(set(seeds)) == 3
    assert [r["instance"] for r in bundle.reports] == [0, 1, 2]


def test_manifest(tmp_path):
    run(_config(), out_dir=tmp_path)
    manifest = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["seed"] == 11
    assert manifest["experiment"] == "mincut"
    assert {"python", "numpy", "networkx", "opt_einsum", "pydantic"} <= set(manifest["versions"])
    assert manifest["config"]["geometry"]["N"] == 64
    assert manifest["files"] == ["sweep.csv", "reports.json", "manifest.json"]


def test_json_sweep_format(tmp_path):
    cfg = _config(output={"format": "json", "dir": str(tmp_path)})
    run(cfg)
    rows = json.loads((tmp_path / "sweep.json").read_text(encoding="utf-8"))
    assert [r["param"] for r in rows] == [2, 4, 8, 16]
    assert set(rows[0]) == set(CSV_COLUMNS)


def test_mera_min_cut_fit_is_logarithmic():
    cfg = _config(geometry={"kind": "mera", "N": 256}, sweep={"L": [2, 4, 8, 16, 32, 64], "origins": 16})
    (inst,) = run(cfg, write=False).instances
    assert inst.report["fit"]["model"] == "log"


def test_conversion_sweep_rows():
    cfg = _config(experiment="frmera_convert", geometry={"kind": "finite_range", "N": 8, "z_xi": 0, "delta_z": 1})
    (inst,) = run(cfg, write=False).instances
    assert [r.kind for r in inst.rows] == ["chi_mps"] * 7
    assert len(inst.report["bound_per_bond"]) == 7
    assert inst.report["fidelity"] == pytest.approx(1.0, abs=1e-8)


def test_saturation_sweep_report():
    cfg = _config(experiment="frmera_saturation", geometry={"kind": "finite_range", "N": 16, "z_xi": 1},
                  sweep={"L": [1, 2, 4, 8]})
    (inst,) = run(cfg, write=False).instances
    assert inst.report["bound_holds"]
    kinds = {r.kind for r in inst.rows}
    assert kinds == {"mincut", "entropy"}


def test_branch_sweep():
    cfg = _config(experiment="branch", geometry={"kind": "branching", "N": 64, "D": 2, "tree": "gamma1"},
                  sweep={"L": [1, 2, 4, 8]})
    (inst,) = run(cfg, write=False).instances
    assert inst.report["class"] == "L·log L"
    assert [r.param for r in inst.rows] == [2, 4, 8]


def test_make_experiment_rejects_unknown_kind():
    cfg = _config().model_copy(update={"experiment": "teleport"})
    with pytest.raises(ValueError):
        make_experiment(cfg)


def test_default_mps_config_decays_exponentially():
    cfg = _config(experiment="mps_corr", geometry={"kind": "mps", "chi": 4, "d": 2},
                  sweep={"r": [1, 2, 3, 4, 5], "instances": 10})
    assert mps_coupling(cfg.geometry) == DEFAULT_COUPLING
    reports = run(cfg, write=False).reports
    selected = [r for r in reports if r.get("window_fit", {}).get("model") == "exponential"]
    assert len(selected) >= 9
    for r in selected:
        assert r["window_fit"]["params"]["xi"] == pytest.approx(r["xi_transfer"], rel=0.05)


@pytest.mark.parametrize("geometry, coupling", [
    ({"kind": "mps", "chi": 4}, DEFAULT_COUPLING),
    ({"kind": "mps", "chi": 3}, None),
    ({"kind": "mps", "chi": 4, "ensemble": "iid"}, None),
    ({"kind": "mps", "chi": 4, "coupling": 0.05}, 0.05),
    ({"kind": "mps", "chi": 2, "ensemble": "two_sector"}, DEFAULT_COUPLING),
])
def test_ensemble_coupling(geometry, coupling):
    cfg = _config(experiment="mps_spectrum", geometry=geometry, sweep={})
    assert mps_coupling(cfg.geometry) == coupling
