# src/tngeo/experiments/experiment.py
"""Abstract sweep experiment: seeded instances evaluated over a parameter grid."""
from __future__ import annotations

import abc
from abc import ABC
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, ClassVar, Dict, List, Optional, Tuple

from tngeo.utils.config import ExperimentConfig
from tngeo.utils.logging import get_logger
from tngeo.utils.seeding import derive_seed

logger = get_logger(__name__)

CSV_COLUMNS = ("kind", "chi", "d", "seed", "param", "value")


@dataclass(frozen=True)
class SweepRow:
    """One CSV row ``kind,chi,d,seed,param,value``."""

    kind: str
    chi: int
    d: int
    seed: int
    param: float
    value: float

    def sort_key(self) -> Tuple[Any, ...]:
        return (self.seed, self.kind, self.param)

    def fields(self) -> List[str]:
        param = str(int(self.param)) if float(self.param).is_integer() else f"{self.param:.17g}"
        return [self.kind, str(self.chi), str(self.d), str(self.seed), param, f"{self.value:.17g}"]

    def to_dict(self) -> Dict[str, Any]:
        return dict(zip(CSV_COLUMNS, (self.kind, self.chi, self.d, self.seed, self.param, self.value)))


@dataclass
class InstanceResult:
    index: int
    seed: int
    rows: List[SweepRow] = field(default_factory=list)
    report: Dict[str, Any] = field(default_factory=dict)


class Experiment(ABC):
    """Base class for every ``run`` experiment kind.

    Subclasses set ``kind`` and implement :meth:`run_instance`, which builds
    one seeded instance and evaluates the whole grid on it.  Instance seeds
    are derived from the master seed and the instance index only, so
    results do not depend on how instances are scheduled.
    """

    kind: ClassVar[str] = ""

    def __init__(self, config: ExperimentConfig, metadata: Optional[Dict[str, Any]] = None):
        self.config = config
        self.geometry = config.geometry
        self.sweep = config.sweep
        self.metadata = metadata or {}

    @property
    def chi(self) -> int:
        return self.geometry.chi

    @property
    def d(self) -> int:
        return self.geometry.site_dim

    def row(self, kind: str, seed: int, param: float, value: float) -> SweepRow:
        return SweepRow(kind, self.chi, self.d, seed, param, float(value))

    def instance_seeds(self) -> List[Tuple[int, int]]:
        return [(i, derive_seed(self.config.seed, i)) for i in range(self.sweep.instances)]

    @abc.abstractmethod
    def run_instance(self, index: int, seed: int) -> InstanceResult:
        ...

    def run(self, workers: Optional[int] = None) -> List[InstanceResult]:
        """Evaluate every instance, concurrently when ``workers > 1``.

        Results come back ordered by instance index, never by completion.
        """
        workers = self.config.workers if workers is None else workers
        seeds = self.instance_seeds()
        logger.info("%s: %d instance(s), %d worker(s)", self.kind, len(seeds), workers)
        if workers <= 1 or len(seeds) <= 1:
            results = [self.run_instance(i, s) for i, s in seeds]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda p: self.run_instance(*p), seeds))
        results.sort(key=lambda r: r.index)
        for res in results:
            res.rows.sort(key=SweepRow.sort_key)
        return results
