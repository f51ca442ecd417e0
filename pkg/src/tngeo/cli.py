# src/tngeo/cli.py
"""
``tngeo`` command-line entry point.

Every experiment subcommand builds an :class:`ExperimentConfig` from an
optional ``--config`` file plus flag overrides, prints the sweep to stdout and,
with ``--out``, writes the full report bundle.  ``run`` executes a config
file as is.

Exit codes: 0 success, 2 invalid configuration or arguments, 3 numerical
failure (non-convergence, degenerate spectrum).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from tngeo.analysis.fitting import fit_decay, fit_entropy
from tngeo.errors import ConfigError, NumericError
from tngeo.experiments.experiment import CSV_COLUMNS
from tngeo.experiments.runner import run
from tngeo.experiments.sweeps import graph_from_config, tree_from_config
from tngeo.graphs.export import to_text
from tngeo.lab.branching import classify_branching, classify_table
from tngeo.states.conversion import cut_bounds
from tngeo.states.finite_range import build_finite_range_mera
from tngeo.utils.config import load_config, parse_config, parse_geometry
from tngeo.utils.logging import configure_logging, get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

# flag dest -> dotted config key (geometry keys are relative to the block)
_GEOMETRY_FLAGS = {
    "kind": "kind",
    "N": "N",
    "T": "T",
    "chi": "chi",
    "d": "d",
    "z_xi": "z_xi",
    "delta_z": "delta_z",
    "coupling": "coupling",
    "ensemble": "ensemble",
    "Lx": "Lx",
    "Ly": "Ly",
    "D": "D",
    "tree": "tree",
    "schedule": "branch_schedule",
}
_SWEEP_FLAGS = {"r": "r", "L": "L", "instances": "instances", "origins": "origins"}

# (group, command) -> (experiment kind, default geometry kind)
_EXPERIMENT_COMMANDS: Dict[Tuple[str, Optional[str]], Tuple[str, Optional[str]]] = {
    ("geodesic", None): ("geodesic", None),
    ("mincut", None): ("mincut", None),
    ("mps", "corr"): ("mps_corr", "mps"),
    ("mps", "entropy"): ("mps_entropy", "mps"),
    ("mps", "spectrum"): ("mps_spectrum", "mps"),
    ("mera", "corr"): ("mera_corr", "mera"),
    ("mera", "entropy"): ("mera_entropy", "mera"),
    ("mera", "spectrum"): ("mera_spectrum", "mera"),
    ("frmera", "convert"): ("frmera_convert", "finite_range"),
    ("frmera", "crossover"): ("frmera_crossover", "finite_range"),
    ("frmera", "saturation"): ("frmera_saturation", "finite_range"),
}


def _int_list(text: str) -> List[int]:
    """``"2,4,8"`` or an inclusive range ``"2:8"``."""
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":", 1))
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like 2,4,8 or 2:8, got {text!r}") from None


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


# =============================================================================
# Parser
# =============================================================================

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON experiment config")
    p.add_argument("--seed", type=_u64, help="master seed (overrides the config)")
    p.add_argument("--out", type=Path, help="output directory (or file for build)")
    p.add_argument("--format", choices=("csv", "json"), help="sweep output format")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")


def _geometry(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("geometry")
    g.add_argument("--kind", choices=("mps", "peps", "mera", "finite_range", "branching"))
    g.add_argument("--N", type=int, help="number of sites")
    g.add_argument("--T", type=int, help="MERA layers")
    g.add_argument("--chi", type=int, help="bond dimension")
    g.add_argument("--d", type=int, help="physical dimension")
    g.add_argument("--z-xi", dest="z_xi", type=int)
    g.add_argument("--delta-z", dest="delta_z", type=int)
    g.add_argument("--coupling", type=float, help="two-sector MPS coupling")
    g.add_argument("--ensemble", choices=("auto", "iid", "two_sector"), help="random MPS ensemble")
    g.add_argument("--Lx", type=int)
    g.add_argument("--Ly", type=int)
    g.add_argument("--D", type=int, help="spatial dimension of a branching tree")
    g.add_argument("--tree", help="branching table entry (gapped, gamma0, gamma1, gamma2)")
    g.add_argument("--schedule", type=_int_list, help="branching scales, e.g. 2,3")


def _sweep(p: argparse.ArgumentParser) -> None:
    s = p.add_argument_group("sweep")
    s.add_argument("--r", type=_int_list, help="separations")
    s.add_argument("--L", type=_int_list, help="block lengths")
    s.add_argument("--instances", type=int)
    s.add_argument("--origins", type=int)
    s.add_argument("--workers", type=int)


def _experiment_parser(sub, name: str, help_text: str) -> argparse.ArgumentParser:
    p = sub.add_parser(name, help=help_text)
    _common(p)
    _geometry(p)
    _sweep(p)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tngeo", description="Tensor-network geometry lab")
    sub = parser.add_subparsers(dest="group", required=True)

    p = sub.add_parser("build", help="emit a geometry graph in text format")
    _common(p)
    _geometry(p)

    _experiment_parser(sub, "geodesic", "geodesic length vs separation")
    _experiment_parser(sub, "mincut", "min-cut size vs block length")

    for group, commands in (
        ("mps", ("corr", "entropy", "spectrum")),
        ("mera", ("corr", "entropy", "spectrum")),
    ):
        gp = sub.add_parser(group, help=f"{group.upper()} sweeps")
        gsub = gp.add_subparsers(dest="command", required=True)
        for c in commands:
            _experiment_parser(gsub, c, f"{group} {c} sweep")

    fp = sub.add_parser("frmera", help="finite-range MERA")
    fsub = fp.add_subparsers(dest="command", required=True)
    p = fsub.add_parser("build", help="summarise a seeded finite-range MERA")
    _common(p)
    _geometry(p)
    for c, h in (
        ("convert", "exact MERA to MPS compilation"),
        ("crossover", "two-regime geodesic diagnostic"),
        ("saturation", "entropy and min-cut saturation table"),
    ):
        _experiment_parser(fsub, c, h)

    bp = sub.add_parser("branch", help="branching MERA geometries")
    bsub = bp.add_subparsers(dest="command", required=True)
    p = bsub.add_parser("classify", help="entropy scaling class of a branching tree")
    _common(p)
    _geometry(p)
    p.add_argument("--table", action="store_true", help="classify every table entry")

    p = sub.add_parser("fit", help="fit a scaling model to (x, y) points")
    _common(p)
    p.add_argument("input", type=Path, help="CSV of x,y pairs or a sweep CSV")
    p.add_argument("--model", choices=("decay", "entropy"), required=True)
    p.add_argument("--crossover", action="store_true", help="let the mixed decay model compete")
    p.add_argument("--row-kind", help="sweep rows of this kind only")

    p = sub.add_parser("run", help="execute a config file and write the report bundle")
    _common(p)
    p.add_argument("--workers", type=int)
    return parser


# =============================================================================
# Commands
# =============================================================================

def _flag_overrides(args: argparse.Namespace, table: Dict[str, str], prefix: str = "") -> Dict[str, Any]:
    return {prefix + key: getattr(args, dest, None) for dest, key in table.items()}


def _experiment_config(args: argparse.Namespace, experiment: str, default_kind: Optional[str]):
    overrides: Dict[str, Any] = {
        "experiment": experiment,
        "seed": args.seed,
        "output.format": args.format,
        "output.dir": str(args.out) if args.out else None,
        "workers": getattr(args, "workers", None),
    }
    overrides.update(_flag_overrides(args, _GEOMETRY_FLAGS, "geometry."))
    overrides.update(_flag_overrides(args, _SWEEP_FLAGS, "sweep."))
    if default_kind is not None and args.kind is None:
        overrides["geometry.kind"] = default_kind
    if args.config is not None:
        return load_config(args.config, overrides)
    return parse_config({}, overrides)


def _geometry_config(args: argparse.Namespace):
    return parse_geometry(args.config, _flag_overrides(args, _GEOMETRY_FLAGS))


def _emit(text: str, out: Optional[Path], stdout: TextIO) -> None:
    if out is None:
        stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_experiment(args: argparse.Namespace, stdout: TextIO) -> int:
    experiment, default_kind = _EXPERIMENT_COMMANDS[(args.group, getattr(args, "command", None))]
    config = _experiment_config(args, experiment, default_kind)
    bundle = run(config, write=args.out is not None)
    if args.out is None:
        stdout.write(bundle.sweep_text())
        stdout.write(_dump(bundle.reports))
    else:
        stdout.write(f"wrote {args.out}\n")
    return EXIT_OK


def cmd_run(args: argparse.Namespace, stdout: TextIO) -> int:
    if args.config is None:
        raise ConfigError("run needs --config", ["--config: required"])
    overrides = {
        "seed": args.seed,
        "output.format": args.format,
        "output.dir": str(args.out) if args.out else None,
        "workers": args.workers,
    }
    config = load_config(args.config, overrides)
    bundle = run(config)
    for name, path in sorted(bundle.files.items()):
        stdout.write(f"{name}: {path}\n")
    return EXIT_OK


def cmd_build(args: argparse.Namespace, stdout: TextIO) -> int:
    graph = graph_from_config(_geometry_config(args))
    _emit(to_text(graph), args.out, stdout)
    return EXIT_OK


def cmd_frmera_build(args: argparse.Namespace, stdout: TextIO) -> int:
    if args.seed is None:
        raise ConfigError("frmera build needs a seed", ["seed: required"])
    g = _geometry_config(args)
    m = build_finite_range_mera(g.N, g.z_xi, g.delta_z, chi=g.chi, seed=args.seed, d=g.site_dim)
    summary = {
        "N": m.N,
        "z_xi": m.z_xi,
        "delta_z": m.delta_z,
        "z0": m.z0,
        "chi": m.chi,
        "d": m.d,
        "seed": args.seed,
        "layer_errors": [list(layer.constraint_errors()) for layer in m.mera.layers],
        "bound_per_bond": cut_bounds(m),
    }
    _emit(_dump(summary), args.out, stdout)
    return EXIT_OK


def cmd_branch_classify(args: argparse.Namespace, stdout: TextIO) -> int:
    if args.table:
        rows = [
            {"D": D, "entry": entry, "expected": expected, "class": got}
            for D, entry, expected, got in classify_table()
        ]
        _emit(_dump(rows), args.out, stdout)
        return EXIT_OK
    g = _geometry_config(args)
    _emit(_dump(classify_branching(tree_from_config(g), g.D).to_dict()), args.out, stdout)
    return EXIT_OK


def _read_points(path: Path, row_kind: Optional[str]) -> List[Tuple[float, float]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}", [str(exc)]) from None
    records = [r for r in csv.reader(text.splitlines()) if r and not r[0].startswith("#")]
    if records and tuple(records[0]) == CSV_COLUMNS:
        records = [
            (r[4], r[5]) for r in records[1:]
            if row_kind is None or r[0] == row_kind
        ]
    elif records and not _numeric(records[0][0]):
        records = records[1:]
    points = []
    for lineno, rec in enumerate(records, start=1):
        try:
            points.append((float(rec[0]), float(rec[1])))
        except (IndexError, ValueError):
            raise ConfigError(f"cannot parse {path}", [f"record {lineno}: expected two numbers"]) from None
    return points


def _numeric(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def cmd_fit(args: argparse.Namespace, stdout: TextIO) -> int:
    points = _read_points(args.input, args.row_kind)
    if args.model == "decay":
        report = fit_decay(points, crossover=args.crossover)
    else:
        report = fit_entropy(points)
    _emit(_dump(report.to_dict()), args.out, stdout)
    return EXIT_OK


def _dispatch(args: argparse.Namespace) -> Callable[[argparse.Namespace, TextIO], int]:
    command = getattr(args, "command", None)
    if args.group == "build":
        return cmd_build
    if args.group == "run":
        return cmd_run
    if args.group == "fit":
        return cmd_fit
    if (args.group, command) == ("frmera", "build"):
        return cmd_frmera_build
    if (args.group, command) == ("branch", "classify"):
        return cmd_branch_classify
    return cmd_experiment


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    out = stdout or sys.stdout
    try:
        return _dispatch(args)(args, out)
    except ConfigError as exc:
        print(f"tngeo: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"tngeo: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"tngeo: invalid argument: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
