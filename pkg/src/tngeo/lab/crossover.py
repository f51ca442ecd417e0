# src/tngeo/lab/crossover.py
"""
Geodesic crossover in a finite-range MERA geometry.

Below ``2**z0`` sites a geodesic can climb the layers, so its length grows
like ``log2 r``; beyond that the product top offers no shortcut and the path
has to walk along the highest layer, which makes it linear in ``r``.  The
diagnostic fits a two-regime model (logarithmic head, linear tail) and
reports where the regimes meet.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from tngeo.graphs.abstract_graph import TNGraph
from tngeo.graphs.analysis import geodesic_profile
from tngeo.utils.logging import get_logger

logger = get_logger(__name__)

MIN_HEAD = 2
MIN_TAIL = 3
LINEAR_PREFERENCE = 0.5
EXACT_FIT_SSE = 1e-9


def _fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float, float]:
    """Least-squares ``y = a + b x``; returns (a, b, SSE)."""
    if len(x) < 2:
        return float(y[0]), 0.0, 0.0
    b, a = np.polyfit(x, y, 1)
    sse = float(np.sum((y - (a + b * x)) ** 2))
    return float(a), float(b), sse


@dataclass
class CrossoverReport:
    """Two-regime geodesic fit.

    ``head`` is ``(a, b)`` of ``a + b log2 r`` on the points up to ``kink``;
    ``tail`` is ``(a', b')`` of ``a' + b' r`` on the points after it.
    """

    z0: int
    points: List[Tuple[int, float]]
    kink: int
    head: Tuple[float, float]
    tail: Tuple[float, float]
    head_sse: float
    tail_sse: float
    tail_log_sse: float
    linear_regime: bool
    expected_kink: int = field(init=False)

    def __post_init__(self) -> None:
        self.expected_kink = 2 ** self.z0

    @property
    def kink_ratio(self) -> float:
        return self.kink / self.expected_kink

    def to_dict(self) -> Dict[str, object]:
        return {
            "z0": self.z0,
            "points": [[r, v] for r, v in self.points],
            "kink": self.kink,
            "expected_kink": self.expected_kink,
            "head": list(self.head),
            "tail": list(self.tail),
            "linear_regime": self.linear_regime,
        }


def crossover_diagnostics(
    g: TNGraph,
    r_values: Sequence[int],
    origins: Optional[Iterable[int]] = None,
) -> CrossoverReport:
    """Classify geodesic lengths on a finite-range MERA graph into regimes.

    Geodesics are averaged over ``origins`` (all sites by default).  Every
    split with at least two head points and three tail points is tried; the
    split with the smallest total residual wins, the earliest one on ties.
    The linear regime counts as detected when the tail's linear fit beats
    its logarithmic fit by a factor of two with a positive slope.

    Raises
    ------
    ValueError
        Fewer than five distinct separations, or a graph that is not a
        connected finite-range MERA geometry (``z0 >= 1``).
    """
    if g.kind not in ("finite_range", "mera"):
        raise ValueError(f"crossover diagnostics need a finite-range MERA graph, got {g.kind!r}")
    z0 = int(g.metadata.get("z0", g.metadata.get("T", 0)))
    if z0 < 1:
        raise ValueError("crossover diagnostics need z0 >= 1 (z0 = 0 leaves the sites disconnected)")
    rs = sorted({int(r) for r in r_values})
    if len(rs) < MIN_HEAD + MIN_TAIL:
        raise ValueError(f"need at least {MIN_HEAD + MIN_TAIL} distinct r values, got {len(rs)}")
    if rs[0] < 1:
        raise ValueError("separations must be >= 1")

    profile = geodesic_profile(g, rs, origins)
    r = np.array(rs, dtype=float)
    y = np.array([profile[v] for v in rs])
    lr = np.log2(r)

    best = None
    for k in range(MIN_HEAD, len(rs) - MIN_TAIL + 1):
        a, b, head_sse = _fit(lr[:k], y[:k])
        a2, b2, tail_sse = _fit(r[k:], y[k:])
        total = head_sse + tail_sse
        if best is None or total < best[0] - 1e-12:
            best = (total, k, (a, b), (a2, b2), head_sse, tail_sse)
    _, k, head, tail, head_sse, tail_sse = best
    _, _, tail_log_sse = _fit(lr[k:], y[k:])

    if tail_sse < EXACT_FIT_SSE and tail_log_sse < EXACT_FIT_SSE:
        linear = False
    else:
        linear = tail_sse < LINEAR_PREFERENCE * tail_log_sse and tail[1] > 0

    report = CrossoverReport(
        z0=z0,
        points=[(v, float(profile[v])) for v in rs],
        kink=rs[k - 1],
        head=head,
        tail=tail,
        head_sse=head_sse,
        tail_sse=tail_sse,
        tail_log_sse=tail_log_sse,
        linear_regime=bool(linear),
    )
    logger.info(
        "crossover z0=%d kink=%d (expected %d) linear=%s",
        z0, report.kink, report.expected_kink, report.linear_regime,
    )
    return report
