# src/tngeo/analysis/fitting.py
"""
Scaling-law model selection.

Each candidate model is a linear least-squares fit in its own coordinates:

    decay     exponential   ln|C| = a + b r          (xi = -1/b)
              power         ln|C| = a + b ln r       (q = -b)
              mixed         ln|C| = a - q ln r - r/xi   (only with crossover=True)
    entropy   constant      S = a
              log           S = a + b log2 L
              linear        S = a + b L
              n·log n       S = a + b L log2 L

Models are ranked by the BIC-style score

    score = (n/2) ln(SSE/n) + (k/2) ln n

with ``k`` fitted parameters.  SSE is floored at ``1e-20 * sum(y^2)`` so that
exact synthetic data still ranks by parameter count, and the floor scales
with the data so rescaling every value never changes the chosen model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from tngeo.utils.logging import get_logger

logger = get_logger(__name__)

MAGNITUDE_FLOOR = 1e-14
SSE_FLOOR = 1e-20
TIE_MARGIN = 1e-9
MIN_DECAY_POINTS = 5
MIN_ENTROPY_POINTS = 4


@dataclass
class ScalingReport:
    kind: str
    model: str
    params: Dict[str, float]
    r_squared: float
    residuals: List[float]
    scores: Dict[str, float]
    margin: float
    tie: bool
    points: List[Tuple[float, float]]
    dropped: int = 0
    crossover: Optional[float] = None

    @property
    def runner_up(self) -> Optional[str]:
        ranked = sorted(self.scores, key=self.scores.get)
        return ranked[1] if len(ranked) > 1 else None

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "model": self.model,
            "params": dict(self.params),
            "r_squared": self.r_squared,
            "residuals": list(self.residuals),
            "scores": dict(self.scores),
            "margin": self.margin,
            "tie": self.tie,
            "points": [[x, y] for x, y in self.points],
            "dropped": self.dropped,
            "crossover": self.crossover,
        }


@dataclass
class _Fit:
    coef: np.ndarray
    sse: float
    residuals: np.ndarray
    r_squared: float
    k: int = field(init=False)

    def __post_init__(self) -> None:
        self.k = len(self.coef)


def _lstsq(columns: Sequence[np.ndarray], y: np.ndarray) -> _Fit:
    X = np.column_stack(columns)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    res = y - X @ coef
    sse = float(res @ res)
    sst = float(np.sum((y - y.mean()) ** 2))
    if sst <= 0:
        r2 = 1.0 if sse <= SSE_FLOOR * max(float(y @ y), 1e-300) else 0.0
    else:
        r2 = float(np.clip(1.0 - sse / sst, 0.0, 1.0))
    return _Fit(coef, sse, res, r2)


def _score(fit: _Fit, y: np.ndarray) -> float:
    n = len(y)
    floor = max(SSE_FLOOR * float(y @ y), 1e-300)
    return 0.5 * n * np.log(max(fit.sse, floor) / n) + 0.5 * fit.k * np.log(n)


def _select(
    kind: str,
    y: np.ndarray,
    fits: Dict[str, _Fit],
    params: Dict[str, Callable[[np.ndarray], Dict[str, float]]],
    points: List[Tuple[float, float]],
    dropped: int = 0,
) -> ScalingReport:
    scores = {name: float(_score(f, y)) for name, f in fits.items()}
    ranked = sorted(scores, key=lambda name: (scores[name], fits[name].k))
    best = ranked[0]
    margin = scores[ranked[1]] - scores[best] if len(ranked) > 1 else float("inf")
    tie = margin <= TIE_MARGIN * max(1.0, abs(scores[best]))
    fit = fits[best]
    return ScalingReport(
        kind=kind,
        model=best,
        params=params[best](fit.coef),
        r_squared=fit.r_squared,
        residuals=[float(v) for v in fit.residuals],
        scores=scores,
        margin=float(margin),
        tie=bool(tie),
        points=points,
        dropped=dropped,
    )


def decay_window(xi: float, lo: float = 2.0, hi: float = 6.0, n: int = 12) -> List[int]:
    """Distinct integer separations spread over ``[lo*xi, hi*xi]``.

    Empty when ``xi`` is zero or not finite.
    """
    if not np.isfinite(xi) or xi <= 0:
        return []
    rs = np.linspace(lo * xi, hi * xi, n).round().astype(int)
    return sorted({int(r) for r in rs if r >= 1})


def _safe_inverse(b: float) -> float:
    return float(-1.0 / b) if b != 0 else float("inf")


def fit_decay(points: Sequence[Tuple[float, complex]], crossover: bool = False) -> ScalingReport:
    """Choose between exponential and power-law decay of ``|C(r)|``.

    Magnitudes below 1e-14 are treated as numeric zero and dropped; the
    count is reported.  With ``crossover=True`` the mixed model
    ``e^{-r/xi} / r^q`` competes as well and ``report.crossover`` holds its
    ``xi``, the separation where the exponential factor takes over.

    Raises
    ------
    ValueError
        Fewer than five usable points or a non-positive separation.
    """
    raw = [(float(r), complex(c)) for r, c in points]
    if any(r <= 0 for r, _ in raw):
        raise ValueError("separations must be positive")
    kept = [(r, abs(c)) for r, c in raw if abs(c) >= MAGNITUDE_FLOOR]
    dropped = len(raw) - len(kept)
    if dropped:
        logger.info("fit_decay: dropped %d samples below %.0e", dropped, MAGNITUDE_FLOOR)
    if len(kept) < MIN_DECAY_POINTS:
        raise ValueError(f"fit_decay needs >= {MIN_DECAY_POINTS} points above the numeric floor, got {len(kept)}")
    r = np.array([p[0] for p in kept])
    y = np.log([p[1] for p in kept])
    one = np.ones_like(r)

    fits = {
        "exponential": _lstsq([one, r], y),
        "power": _lstsq([one, np.log(r)], y),
    }
    params = {
        "exponential": lambda c: {"xi": _safe_inverse(c[1]), "amplitude": float(np.exp(c[0]))},
        "power": lambda c: {"q": float(-c[1]), "amplitude": float(np.exp(c[0]))},
    }
    if crossover:
        fits["mixed"] = _lstsq([one, np.log(r), r], y)
        params["mixed"] = lambda c: {
            "xi": _safe_inverse(c[2]),
            "q": float(-c[1]),
            "amplitude": float(np.exp(c[0])),
        }
    report = _select("decay", y, fits, params, [(float(a), float(abs(b))) for a, b in raw], dropped)
    if crossover:
        report.crossover = _safe_inverse(float(fits["mixed"].coef[2]))
    logger.debug("fit_decay -> %s (margin %.3g)", report.model, report.margin)
    return report


ENTROPY_MODELS = ("constant", "log", "linear", "n·log n")


def fit_entropy(points: Sequence[Tuple[float, float]]) -> ScalingReport:
    """Choose among constant, log, linear and L·log L growth of ``S(L)``.

    Raises
    ------
    ValueError
        Fewer than four points, repeated lengths, or a length below 1.
    """
    pts = [(float(L), float(S)) for L, S in points]
    if len(pts) < MIN_ENTROPY_POINTS:
        raise ValueError(f"fit_entropy needs >= {MIN_ENTROPY_POINTS} points, got {len(pts)}")
    L = np.array([p[0] for p in pts])
    if np.any(L < 1) or len(set(L.tolist())) != len(L):
        raise ValueError("fit_entropy needs distinct block sizes >= 1")
    y = np.array([p[1] for p in pts])
    one = np.ones_like(L)
    lg = np.log2(L)
    fits = {
        "constant": _lstsq([one], y),
        "log": _lstsq([one, lg], y),
        "linear": _lstsq([one, L], y),
        "n·log n": _lstsq([one, L * lg], y),
    }
    ab = lambda c: {"a": float(c[0]), "b": float(c[1])}
    params = {
        "constant": lambda c: {"a": float(c[0])},
        "log": ab,
        "linear": ab,
        "n·log n": ab,
    }
    report = _select("entropy", y, fits, params, pts)
    logger.debug("fit_entropy -> %s (margin %.3g)", report.model, report.margin)
    return report
