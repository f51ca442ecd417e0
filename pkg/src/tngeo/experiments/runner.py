# src/tngeo/experiments/runner.py
"""
Run an experiment config end to end and write its report bundle.

Output directory layout::

    <output.dir>/
      sweep.csv | sweep.json   rows kind,chi,d,seed,param,value
      reports.json             one report per instance (fits embed their points)
      manifest.json            package versions, seed, config, wall time

``sweep.*`` and ``reports.json`` depend only on the config; the manifest
also records wall time and is therefore not byte-stable between runs.
"""
from __future__ import annotations

import csv
import io
import json
import platform
import time
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from tngeo.experiments.experiment import CSV_COLUMNS, InstanceResult, SweepRow
from tngeo.experiments.sweeps import make_experiment
from tngeo.utils.config import ExperimentConfig
from tngeo.utils.logging import get_logger

logger = get_logger(__name__)

_VERSIONED = ("tngeo", "numpy", "networkx", "opt_einsum", "pydantic")


def package_versions() -> Dict[str, str]:
    out = {"python": platform.python_version()}
    for name in _VERSIONED:
        try:
            out[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            out[name] = "unknown"
    return out


def rows_to_csv(rows: List[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.fields())
    return buf.getvalue()


def rows_to_json(rows: List[SweepRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=2, sort_keys=True) + "\n"


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


@dataclass
class RunBundle:
    """In-memory result of :func:`run`, plus the files it was written to."""

    config: ExperimentConfig
    instances: List[InstanceResult]
    manifest: Dict[str, Any]
    files: Dict[str, Path] = field(default_factory=dict)

    @property
    def rows(self) -> List[SweepRow]:
        return [row for inst in self.instances for row in inst.rows]

    @property
    def reports(self) -> List[Dict[str, Any]]:
        return [{"instance": r.index, "seed": r.seed, **r.report} for r in self.instances]

    def sweep_text(self) -> str:
        if self.config.output.format == "json":
            return rows_to_json(self.rows)
        return rows_to_csv(self.rows)


def run(
    config: ExperimentConfig,
    out_dir: Optional[Union[str, Path]] = None,
    write: bool = True,
) -> RunBundle:
    """Execute ``config`` and write ``sweep``, ``reports`` and ``manifest`` files.

    The config is validated before this is called, so nothing is computed
    for a rejected config.  ``out_dir`` overrides ``config.output.dir``.
    """
    experiment = make_experiment(config)
    started = time.perf_counter()
    instances = experiment.run()
    elapsed = time.perf_counter() - started
    logger.info("%s finished in %.3f s", config.experiment, elapsed)

    manifest: Dict[str, Any] = {
        "experiment": config.experiment,
        "seed": config.seed,
        "config": config.model_dump(mode="json"),
        "versions": package_versions(),
        "wall_time_s": elapsed,
    }
    bundle = RunBundle(config, instances, manifest)
    if not write:
        return bundle

    target = Path(out_dir if out_dir is not None else config.output.dir)
    target.mkdir(parents=True, exist_ok=True)
    sweep_name = f"sweep.{config.output.format}"
    bundle.files = {
        "sweep": target / sweep_name,
        "reports": target / "reports.json",
        "manifest": target / "manifest.json",
    }
    manifest["files"] = [sweep_name, "reports.json", "manifest.json"]
    bundle.files["sweep"].write_text(bundle.sweep_text(), encoding="utf-8")
    bundle.files["reports"].write_text(_dump(bundle.reports), encoding="utf-8")
    bundle.files["manifest"].write_text(_dump(manifest), encoding="utf-8")
    logger.info("wrote %s", target)
    return bundle
