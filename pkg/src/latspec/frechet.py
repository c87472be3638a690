"""Limits along the filter of cofinite index sets.

For a bounded family ``f`` on the atoms, the limit superior along the
cofinite filter is ``inf_F sup_{n in F} |f(n)|`` over cofinite ``F``; it is
the largest modulus among the cluster points and also the sup-norm distance
from ``f`` to the families vanishing at infinity.

Finite atom sets make the filter degenerate.  By convention such symbols get
an empty cluster set and zero limsup/liminf, in line with finite-rank
operators having empty essential spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from .config import DEFAULT_CONFIG, AnalysisConfig
from .oracle import cluster_oracle, dedupe
from .symbol import (
    AtomicSymbol,
    ConvergentTail,
    EventuallyPeriodic,
    EventuallyZero,
    Finite,
    Generator,
)


@dataclass(frozen=True)
class ClusterEstimate:
    points: tuple[complex, ...]
    method: Literal["exact", "sampled"]
    tolerance: float = 0.0

    @property
    def is_empty(self) -> bool:
        return not self.points

    def max_modulus(self) -> float:
        return max((abs(z) for z in self.points), default=0.0)


def _window(sym: Generator, cfg: AnalysisConfig) -> np.ndarray:
    return np.abs(sym.samples[sym.tail_start(cfg.cluster_window):])


def limsup_modulus(sym: AtomicSymbol, cfg: AnalysisConfig | None = None) -> float:
    cfg = cfg or DEFAULT_CONFIG
    match sym:
        case Finite():
            return 0.0
        case EventuallyZero():
            return 0.0
        case ConvergentTail(limit=limit):
            return abs(limit)
        case EventuallyPeriodic(period=period):
            return max(abs(v) for v in period)
        case Generator():
            # Sup over the tail window: the tail sup once it has stabilised.
            return sym.tail_sup(sym.tail_start(cfg.cluster_window))
    raise TypeError(f"unsupported symbol {type(sym).__name__}")


def liminf_modulus(sym: AtomicSymbol, cfg: AnalysisConfig | None = None) -> float:
    cfg = cfg or DEFAULT_CONFIG
    match sym:
        case Finite():
            return 0.0
        case EventuallyZero():
            return 0.0
        case ConvergentTail(limit=limit):
            return abs(limit)
        case EventuallyPeriodic(period=period):
            return min(abs(v) for v in period)
        case Generator():
            return float(np.min(_window(sym, cfg)))
    raise TypeError(f"unsupported symbol {type(sym).__name__}")


@lru_cache(maxsize=64)
def _sampled_clusters(sym: Generator, cfg: AnalysisConfig) -> ClusterEstimate:
    eps = cfg.tol(estimated=True)
    pts = cluster_oracle(sym.samples, eps, cfg.cluster_checkpoints, cfg.cluster_window)
    return ClusterEstimate(tuple(pts), "sampled", eps)


def cluster_points(sym: AtomicSymbol, cfg: AnalysisConfig = DEFAULT_CONFIG) -> ClusterEstimate:
    """Cluster points of ``n -> lambda_n`` along the cofinite filter."""
    match sym:
        case Finite():
            return ClusterEstimate((), "exact")
        case EventuallyZero():
            return ClusterEstimate((0j,), "exact")
        case ConvergentTail(limit=limit):
            return ClusterEstimate((limit,), "exact")
        case EventuallyPeriodic(period=period):
            return ClusterEstimate(tuple(dedupe(period, 0.0)), "exact")
        case Generator():
            return _sampled_clusters(sym, cfg)
    raise TypeError(f"unsupported symbol {type(sym).__name__}")


def quotient_norm(sym: AtomicSymbol, cfg: AnalysisConfig | None = None) -> float:
    """Norm of ``lambda + c_0`` in ``l_inf / c_0``, i.e. the distance to c_0."""
    return limsup_modulus(sym, cfg)
