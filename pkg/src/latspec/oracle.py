"""Brute-force checks for the closed-form Fréchet analytics.

These work on raw samples of a symbol rather than on its tail model, so they
share no code path with :mod:`latspec.frechet`.  The removal oracle rests on
the same reduction as the closed form (the optimal finitely supported
perturbation cancels the largest entries), so the two agree by mathematics,
not by construction.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import BudgetExceedsSamples
from .symbol import AtomicSymbol


@dataclass
class OracleResult:
    value: float
    budget: int
    converged: bool
    history: list[tuple[int, float]] = field(default_factory=list)


def quotient_norm_oracle(samples: Sequence[complex], k_max: int,
                         plateau_tol: float = 1e-9) -> OracleResult:
    """Distance in sup norm from ``samples`` to families supported on <= k points.

    Cancelling the ``k`` largest moduli is optimal, so the distance for budget
    ``k`` is the ``(k+1)``-th largest ``|sample|``.  ``history`` records every
    budget up to ``k_max``; ``converged`` reports whether the second half of
    the history is flat within ``plateau_tol``.
    """
    mod = np.abs(np.asarray(samples, dtype=complex)).ravel()
    if mod.size == 0:
        raise ValueError("quotient_norm_oracle needs at least one sample")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    if k_max >= mod.size:
        raise BudgetExceedsSamples(f"budget {k_max} needs more than {mod.size} samples")

    cut = mod.size - k_max - 1
    top = np.sort(np.partition(mod, cut)[cut:])[::-1]
    history = [(k, float(top[k])) for k in range(k_max + 1)]
    value = history[-1][1]
    converged = history[k_max // 2][1] - value <= plateau_tol
    return OracleResult(value, k_max, converged, history)


def dedupe(points: Iterable[complex], eps: float) -> list[complex]:
    """Greedy merge of points closer than ``eps``.

    Points are visited by ascending modulus, then ascending argument; a point
    is kept unless an already kept point lies within ``eps``.
    """
    pts = np.unique(np.asarray(list(points), dtype=complex).ravel())
    if pts.size == 0:
        return []
    order = np.lexsort((np.angle(pts), np.abs(pts)))
    pts = pts[order]
    if eps <= 0:
        return [complex(z) for z in pts]

    kept: list[complex] = []
    grid: dict[tuple[int, int], list[complex]] = {}
    for z in pts:
        cx, cy = int(np.floor(z.real / eps)), int(np.floor(z.imag / eps))
        near = any(
            abs(z - w) <= eps
            for dx in (-1, 0, 1)
            for dy in (-1, 0, 1)
            for w in grid.get((cx + dx, cy + dy), ())
        )
        if not near:
            kept.append(complex(z))
            grid.setdefault((cx, cy), []).append(z)
    return kept


def cluster_oracle(samples: Sequence[complex], eps: float, checkpoints: int = 8,
                   window: float = 0.5) -> list[complex]:
    """Points that recur in every one of ``checkpoints`` disjoint tail windows.

    The last ``window`` fraction of the samples is split into ``checkpoints``
    consecutive blocks.  Candidates are the (deduplicated) points of the
    final block; a candidate survives if each block has a sample within
    ``eps`` of it, a finite stand-in for "approached infinitely often".
    """
    s = np.asarray(samples, dtype=complex).ravel()
    if checkpoints < 1:
        raise ValueError("checkpoints must be >= 1")
    if s.size < 2 * checkpoints:
        raise ValueError(f"need at least {2 * checkpoints} samples, got {s.size}")
    if eps < 0:
        raise ValueError("eps must be >= 0")

    tail = s[s.size - max(checkpoints, int(round(s.size * window))):]
    blocks = np.array_split(tail, checkpoints)
    candidates = np.array(dedupe(blocks[-1], eps), dtype=complex)
    alive = np.ones(candidates.size, dtype=bool)
    query = np.column_stack([candidates.real, candidates.imag])
    for block in blocks[:-1]:
        tree = cKDTree(np.column_stack([block.real, block.imag]))
        dist, _ = tree.query(query)
        alive &= dist <= eps
    return [complex(z) for z in candidates[alive]]


def compact_tail_check(sym: AtomicSymbol, N_list: Iterable[int]) -> list[tuple[int, float]]:
    """Norm bounds ``||T - sum_{n<=N} lambda_n P_n|| <= sup_{n>N} |lambda_n|``."""
    return [(int(N), sym.tail_sup(int(N))) for N in sorted(N_list)]


def compact_consistent(bounds: Sequence[tuple[int, float]], tol: float = 1e-6) -> bool:
    """True when the finite-rank truncation error has dropped below ``tol``."""
    return bool(bounds) and bounds[-1][1] <= tol


def finite_section_values(sym: AtomicSymbol, N: int) -> list[complex]:
    if N < 1:
        raise ValueError("N must be >= 1")
    return [complex(v) for v in sym.head(N)]


def write_history_csv(results: Mapping[str, OracleResult], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["quantity", "budget", "value"])
        for name, res in results.items():
            for budget, value in res.history:
                writer.writerow([name, budget, repr(value)])
