# src/tngeo/utils/config.py
"""
Experiment configuration.

A run is described by one JSON document validated with pydantic.  Unknown
keys are rejected, the master seed is mandatory, and cross-field
consistency (lattice size vs depth, grids vs experiment kind) is checked
before anything is computed.  JSON syntax errors and validation errors are
both reported as a :class:`~tngeo.errors.ConfigError` carrying one
diagnostic line per problem.

Example::

    {
      "experiment": "mincut",
      "seed": 7,
      "geometry": {"kind": "mera", "N": 256, "chi": 2},
      "sweep": {"L": [4, 8, 16, 32, 64]},
      "output": {"dir": "out", "format": "csv"}
    }
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from tngeo.errors import ConfigError

ExperimentKind = Literal[
    "mps_corr",
    "mps_entropy",
    "mps_spectrum",
    "mera_corr",
    "mera_entropy",
    "mera_spectrum",
    "geodesic",
    "mincut",
    "frmera_convert",
    "frmera_crossover",
    "frmera_saturation",
    "branch",
]

GeometryKind = Literal["mps", "peps", "mera", "finite_range", "branching"]
MPSEnsemble = Literal["auto", "iid", "two_sector"]

_NEEDS_R = {"mps_corr", "mera_corr", "geodesic", "frmera_crossover"}
_NEEDS_L = {"mps_entropy", "mera_entropy", "mincut", "frmera_saturation", "branch"}


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GeometryConfig(_Strict):
    kind: GeometryKind = "mera"
    N: int = Field(16, ge=2)
    T: Optional[int] = Field(None, ge=0)
    z_xi: int = Field(0, ge=0)
    delta_z: int = Field(1, ge=0)
    chi: int = Field(2, ge=1)
    d: Optional[int] = Field(None, ge=1)
    coupling: Optional[float] = Field(None, ge=0)
    ensemble: MPSEnsemble = "auto"
    scale_invariant: bool = True
    branch_schedule: List[int] = Field(default_factory=list)
    Lx: int = Field(4, ge=2)
    Ly: int = Field(4, ge=2)
    D: int = Field(1, ge=1, le=3)
    tree: str = "gamma0"

    @property
    def site_dim(self) -> int:
        return self.chi if self.d is None else self.d

    @property
    def z0(self) -> int:
        return self.z_xi + self.delta_z

    def depth(self) -> int:
        """Number of MERA layers (``log2 N`` unless ``T`` is given)."""
        if self.T is not None:
            return self.T
        return int(math.log2(self.N)) if self.N & (self.N - 1) == 0 else 0

    @model_validator(mode="after")
    def _consistent(self) -> "GeometryConfig":
        if self.kind in ("mera", "branching"):
            T = self.depth()
            if T < 1 or self.N % (2 ** T):
                raise ValueError(f"N={self.N} is not compatible with T={T} layers")
        if self.kind == "finite_range" and (self.N % (2 ** self.z0) or 2 ** self.z0 > self.N):
            raise ValueError(f"z0 = z_xi + delta_z = {self.z0} exceeds the lattice N={self.N}")
        if self.kind == "branching" and any(z < 1 or z >= self.depth() for z in self.branch_schedule):
            raise ValueError(f"branch scales must lie in [1, {self.depth() - 1}]")
        if self.ensemble == "iid" and self.coupling is not None:
            raise ValueError("an iid MPS ensemble takes no coupling")
        if self.kind == "mps" and self.ensemble == "two_sector" and self.chi % 2:
            raise ValueError(f"the two-sector MPS ensemble needs an even chi, got {self.chi}")
        return self


class SweepConfig(_Strict):
    r: List[int] = Field(default_factory=list)
    L: List[int] = Field(default_factory=list)
    instances: int = Field(1, ge=1)
    origins: int = Field(16, ge=1)


class OutputConfig(_Strict):
    dir: str = "tngeo-out"
    format: Literal["csv", "json"] = "csv"


class ExperimentConfig(_Strict):
    experiment: ExperimentKind
    seed: int = Field(..., ge=0, lt=2 ** 64)
    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    workers: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _grids(self) -> "ExperimentConfig":
        if self.experiment in _NEEDS_R and not self.sweep.r:
            raise ValueError(f"experiment {self.experiment!r} needs a nonempty sweep.r grid")
        if self.experiment in _NEEDS_L and not self.sweep.L:
            raise ValueError(f"experiment {self.experiment!r} needs a nonempty sweep.L grid")
        if any(r < 1 for r in self.sweep.r):
            raise ValueError("sweep.r values must be >= 1")
        if any(L < 1 for L in self.sweep.L):
            raise ValueError("sweep.L values must be >= 1")
        return self


def _diagnostics(err: ValidationError) -> List[str]:
    out = []
    for e in err.errors():
        loc = ".".join(str(p) for p in e.get("loc", ())) or "<root>"
        out.append(f"{loc}: {e.get('msg', 'invalid value')}")
    return out


def _set_dotted(data: Dict[str, Any], key: str, value: Any) -> None:
    parts = key.split(".")
    node = data
    for p in parts[:-1]:
        child = node.setdefault(p, {})
        if not isinstance(child, dict):
            raise ConfigError("invalid override", [f"{key}: {p} is not an object"])
        node = child
    node[parts[-1]] = value


def parse_config(
    source: Union[str, Mapping[str, Any]],
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentConfig:
    """Validate a JSON string or a mapping, applying dotted-key overrides."""
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ConfigError("config is not valid JSON", [f"line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from None
    else:
        data = json.loads(json.dumps(dict(source)))
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object", ["<root>: expected an object"])
    for key, value in (overrides or {}).items():
        if value is not None:
            _set_dotted(data, key, value)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError("invalid experiment config", _diagnostics(exc)) from None


def load_config(path: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None) -> ExperimentConfig:
    """Read and validate the JSON config at ``path``.

    Raises
    ------
    ConfigError
        Unreadable file, malformed JSON (with line and column) or invalid
        fields (with dotted field paths).
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}", [str(exc)]) from None
    return parse_config(text, overrides)


def parse_geometry(
    source: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> GeometryConfig:
    """Validate only a ``geometry`` block, for commands that need no seed.

    ``source`` is a config file path whose ``geometry`` block is used as the
    base; ``overrides`` use keys relative to the block (``"N"``, ``"chi"``).
    """
    data: Dict[str, Any] = {}
    if source is not None:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {source}", [str(exc)]) from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("config is not valid JSON", [f"line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from None
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object", ["<root>: expected an object"])
        data = dict(doc.get("geometry") or {})
    for key, value in (overrides or {}).items():
        if value is not None:
            _set_dotted(data, key, value)
    try:
        return GeometryConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError("invalid geometry", [f"geometry.{d}" for d in _diagnostics(exc)]) from None
