# src/tests/test_config.py
"""Config validation, seeding and logging helpers."""
import io
import json
import logging

import pytest

from tngeo.errors import ConfigError
from tngeo.utils.config import load_config, parse_config, parse_geometry
from tngeo.utils.logging import configure_logging, get_logger
from tngeo.utils.seeding import derive_seed

VALID = {
    "experiment": "mincut",
    "seed": 7,
    "geometry": {"kind": "mera", "N": 256, "chi": 2},
    "sweep": {"L": [4, 8, 16, 32, 64]},
    "output": {"dir": "out", "format": "csv"},
}


def _diagnostics(exc_info) -> str:
    return "\n".join(exc_info.value.diagnostics)


def test_valid_config():
    cfg = parse_config(json.dumps(VALID))
    assert cfg.experiment == "mincut"
    assert cfg.geometry.depth() == 8
    assert cfg.sweep.L == [4, 8, 16, 32, 64]
    assert cfg.workers == 1


def test_mapping_and_string_agree():
    assert parse_config(VALID) == parse_config(json.dumps(VALID))


def test_malformed_json_reports_line_and_column():
    text = '{\n  "experiment": "mincut",\n  "seed": ,\n}'
    with pytest.raises(ConfigError) as exc_info:
        parse_config(text)
    assert "line 3, column" in _diagnostics(exc_info)


def test_unknown_key_reports_field_path():
    data = dict(VALID, geometry={"kind": "mera", "N": 64, "bond": 3})
    with pytest.raises(ConfigError) as exc_info:
        parse_config(data)
    assert "geometry.bond" in _diagnostics(exc_info)


def test_missing_seed_is_rejected():
    data = {k: v for k, v in VALID.items() if k != "seed"}
    with pytest.raises(ConfigError) as exc_info:
        parse_config(data)
    assert "seed" in _diagnostics(exc_info)


@pytest.mark.parametrize("seed", [-1, 2 ** 64])
def test_seed_must_fit_in_u64(seed):
    with pytest.raises(ConfigError):
        parse_config(dict(VALID, seed=seed))


def test_largest_seed_is_accepted():
    assert parse_config(dict(VALID, seed=2 ** 64 - 1)).seed == 2 ** 64 - 1


def test_incompatible_lattice_and_depth():
    with pytest.raises(ConfigError) as exc_info:
        parse_config(dict(VALID, geometry={"kind": "mera", "N": 48, "T": 5}))
    assert "geometry" in _diagnostics(exc_info)


def test_finite_range_depth_must_fit():
    with pytest.raises(ConfigError):
        parse_config(dict(VALID, geometry={"kind": "finite_range", "N": 8, "z_xi": 3, "delta_z": 1}))


def test_experiment_needs_its_grid():
    with pytest.raises(ConfigError) as exc_info:
        parse_config(dict(VALID, sweep={"r": [1, 2]}))
    assert "sweep.L" in _diagnostics(exc_info)


def test_unknown_experiment_kind():
    with pytest.raises(ConfigError):
        parse_config(dict(VALID, experiment="teleport"))


def test_dotted_overrides():
    cfg = parse_config(VALID, {"geometry.N": 64, "seed": 3, "sweep.instances": None})
    assert cfg.geometry.N == 64
    assert cfg.seed == 3
    assert cfg.sweep.instances == 1


def test_override_through_a_scalar_fails():
    with pytest.raises(ConfigError):
        parse_config(VALID, {"seed.value": 1})


def test_load_config(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(VALID), encoding="utf-8")
    assert load_config(path).seed == 7
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")


def test_geometry_only_parse(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(VALID), encoding="utf-8")
    g = parse_geometry(path, {"N": 32})
    assert (g.kind, g.N) == ("mera", 32)
    with pytest.raises(ConfigError) as exc_info:
        parse_geometry(None, {"kind": "mera", "N": 12})
    assert _diagnostics(exc_info).startswith("geometry")


def test_derived_seeds_are_stable_and_distinct():
    assert derive_seed(7, 0) == derive_seed(7, 0)
    seeds = {derive_seed(7, i) for i in range(100)}
    assert len(seeds) == 100
    assert derive_seed(7, 1) != derive_seed(8, 1)
    assert all(0 <= s < 2 ** 64 for s in seeds)


def test_logging_format_carries_component_tag():
    stream = io.StringIO()
    configure_logging(verbose=True, stream=stream)
    try:
        get_logger("tngeo.states.mps").debug("normalized chi=%d", 4)
        assert stream.getvalue().strip() == "[tngeo.states.mps] normalized chi=4"
    finally:
        root = logging.getLogger("tngeo")
        for h in list(root.handlers):
            root.removeHandler(h)
        root.propagate = True
        root.setLevel(logging.NOTSET)


def test_mps_ensemble_options():
    with pytest.raises(ConfigError):
        parse_config(dict(VALID, geometry={"kind": "mps", "ensemble": "iid", "coupling": 0.1}))
    with pytest.raises(ConfigError) as exc_info:
        parse_config(dict(VALID, geometry={"kind": "mps", "chi": 3, "ensemble": "two_sector"}))
    assert "geometry" in _diagnostics(exc_info)
    assert parse_config(dict(VALID, geometry={"kind": "mps"})).geometry.ensemble == "auto"
