"""Multiplication by ``p`` on ``C(K)`` for a compact set mixing atoms and intervals.

``K = {x_n} u (union of I_n) u {0}`` with ``x_n = 2^-(n+1)`` and
``I_n = [1/(2^(n+1)+2), 1/(2^(n+1)+1)]``.  The isolated points ``x_n`` are the
atoms, so ``T_p`` has atomic symbol ``lambda_n = p(x_n) -> p(0)`` and a
non-atomic part whose spectrum is ``p`` of the intervals together with
``p(0)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import expr as ex
from .operator import CenterOperator
from .spectra import Point, Segment, SpectralSet
from .symbol import ConvergentTail


def atom(n: int) -> float:
    return 1.0 / 2 ** (n + 1)


def interval(n: int) -> tuple[float, float]:
    return 1.0 / (2 ** (n + 1) + 2), 1.0 / (2 ** (n + 1) + 1)


def _polyline(vals: np.ndarray) -> list[Segment]:
    """Segments through consecutive values, merging exactly collinear runs."""
    out = []
    start, prev = vals[0], vals[1]
    for v in vals[2:]:
        d1, d2 = prev - start, v - prev
        cross = d1.real * d2.imag - d1.imag * d2.real
        dot = d1.real * d2.real + d1.imag * d2.imag
        if cross != 0 or dot <= 0:
            out.append(Segment(start, prev))
            start = prev
        prev = v
    out.append(Segment(start, prev))
    return out


@dataclass
class CKExample:
    operator: CenterOperator
    p_text: str
    n_max: int
    samples_per_interval: int
    # Largest half-gap between consecutive image samples, and the spread of p
    # over the intervals beyond n_max; an estimate of the polyline's error.
    sampling_slack: float


def build(p: ex.Expr | str, n_max: int = 40, samples_per_interval: int = 64) -> CKExample:
    """Build ``T_p``.

    The image of each interval is kept as the polyline through
    ``samples_per_interval`` samples, which is exact whenever ``p`` is affine
    on the interval.  Intervals past ``n_max`` are represented by ``p(0)``.
    """
    if isinstance(p, str):
        p = ex.parse(p, "x")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if samples_per_interval < 2:
        raise ValueError("samples_per_interval must be >= 2")

    p0 = ex.evaluate(p, 0.0)
    xs = np.array([atom(n) for n in range(1, n_max + 1)])
    prefix = tuple(complex(v) for v in ex.evaluate_array(p, xs))

    primitives = []
    slack = 0.0
    for n in range(1, n_max + 1):
        a, b = interval(n)
        vals = ex.evaluate_array(p, np.linspace(a, b, samples_per_interval))
        primitives.extend(_polyline(vals))
        slack = max(slack, float(np.max(np.abs(np.diff(vals)))) / 2)
    primitives.append(Point(p0))

    rest = ex.evaluate_array(p, np.linspace(0.0, interval(n_max + 1)[1], samples_per_interval))
    slack = max(slack, float(np.max(np.abs(rest - p0))))

    T = CenterOperator(
        atomic=ConvergentTail(prefix, p0),
        nonatomic=SpectralSet(tuple(primitives)),
        label=f"T_p, p(x) = {ex.to_text(p)}",
    )
    return CKExample(T, ex.to_text(p), n_max, samples_per_interval, slack)
