"""Multiplier families ``(lambda_n)`` indexed by the atoms ``n = 1, 2, 3, ...``.

Four exact tail models plus a sampled ``Generator``:

* ``Finite(values)`` - a finite atom set.
* ``EventuallyZero(prefix)`` - ``prefix`` then zeros.
* ``ConvergentTail(prefix, limit)`` - ``prefix`` then the constant ``limit``.
  The prefix carries the approach to the limit, the tail is exact.
* ``EventuallyPeriodic(prefix, period)`` - ``prefix`` then ``period`` repeated.
* ``Generator(expr, horizon)`` - ``lambda_n = expr(n)``, sampled for
  ``n <= horizon``.  Everything derived from it is an estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import expr as ex
from .config import DEFAULT_CONFIG, MIN_HORIZON, AnalysisConfig
from .errors import DomainError, SymbolValidationError
from .spectra import SampleCloud, SpectralSet

# Generator samples above this modulus are treated as unbounded.
BOUND_LIMIT = 1e12


def _values(seq: Sequence[complex]) -> tuple[complex, ...]:
    out = tuple(complex(v) for v in seq)
    for v in out:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise SymbolValidationError(f"symbol values must be finite, got {v!r}")
    return out


def _max_abs(values: Sequence[complex]) -> float:
    return max((abs(v) for v in values), default=0.0)


def _distinct(values) -> list[complex]:
    seen = []
    for v in values:
        if v not in seen:
            seen.append(v)
    return seen


class AtomicSymbol:
    """Common interface of the five symbol variants."""

    exact = True

    def head(self, n: int) -> np.ndarray:
        """``[lambda_1 .. lambda_n]``, truncated to the defined entries."""
        raise NotImplementedError

    def sup_modulus(self) -> float:
        raise NotImplementedError

    def tail_sup(self, n: int) -> float:
        """``sup_{k > n} |lambda_k|``; non-increasing in ``n``."""
        raise NotImplementedError

    def tail_start(self, window: float = 0.5) -> int:
        """Index after which the model's tail behaviour is fully visible."""
        raise NotImplementedError

    def values_closure(self, cfg: AnalysisConfig = DEFAULT_CONFIG) -> SpectralSet:
        raise NotImplementedError

    def shifted(self, mu: complex) -> "AtomicSymbol":
        """The symbol of ``T + mu*I`` restricted to the atoms."""
        raise NotImplementedError

    def scaled(self, alpha: complex) -> "AtomicSymbol":
        raise NotImplementedError


@dataclass(frozen=True)
class Finite(AtomicSymbol):
    values: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _values(self.values))
        if not self.values:
            raise SymbolValidationError("Finite symbol needs at least one value")

    def head(self, n: int) -> np.ndarray:
        return np.array(self.values[: max(n, 0)], dtype=complex)

    def sup_modulus(self) -> float:
        return _max_abs(self.values)

    def tail_sup(self, n: int) -> float:
        return _max_abs(self.values[max(n, 0):])

    def tail_start(self, window: float = 0.5) -> int:
        return len(self.values)

    def values_closure(self, cfg: AnalysisConfig = DEFAULT_CONFIG) -> SpectralSet:
        return SpectralSet.of_points(_distinct(self.values))

    def shifted(self, mu: complex) -> "Finite":
        return Finite(tuple(v + mu for v in self.values))

    def scaled(self, alpha: complex) -> "Finite":
        return Finite(tuple(alpha * v for v in self.values))


@dataclass(frozen=True)
class EventuallyZero(AtomicSymbol):
    prefix: tuple[complex, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", _values(self.prefix))

    def head(self, n: int) -> np.ndarray:
        out = np.zeros(max(n, 0), dtype=complex)
        k = min(len(self.prefix), out.size)
        out[:k] = self.prefix[:k]
        return out

    def sup_modulus(self) -> float:
        return _max_abs(self.prefix)

    def tail_sup(self, n: int) -> float:
        return _max_abs(self.prefix[max(n, 0):])

    def tail_start(self, window: float = 0.5) -> int:
        return len(self.prefix)

    def values_closure(self, cfg: AnalysisConfig = DEFAULT_CONFIG) -> SpectralSet:
        return SpectralSet.of_points(_distinct(self.prefix + (0j,)))

    def shifted(self, mu: complex) -> AtomicSymbol:
        if mu == 0:
            return self
        return ConvergentTail(tuple(v + mu for v in self.prefix), mu)

    def scaled(self, alpha: complex) -> "EventuallyZero":
        return EventuallyZero(tuple(alpha * v for v in self.prefix))


@dataclass(frozen=True)
class ConvergentTail(AtomicSymbol):
    prefix: tuple[complex, ...]
    limit: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", _values(self.prefix))
        object.__setattr__(self, "limit", _values([self.limit])[0])

    def head(self, n: int) -> np.ndarray:
        out = np.full(max(n, 0), self.limit, dtype=complex)
        k = min(len(self.prefix), out.size)
        out[:k] = self.prefix[:k]
        return out

    def sup_modulus(self) -> float:
        return max(_max_abs(self.prefix), abs(self.limit))

    def tail_sup(self, n: int) -> float:
        return max(_max_abs(self.prefix[max(n, 0):]), abs(self.limit))

    def tail_start(self, window: float = 0.5) -> int:
        return len(self.prefix)

    def values_closure(self, cfg: AnalysisConfig = DEFAULT_CONFIG) -> SpectralSet:
        return SpectralSet.of_points(_distinct(self.prefix + (self.limit,)))

    def shifted(self, mu: complex) -> "ConvergentTail":
        return ConvergentTail(tuple(v + mu for v in self.prefix), self.limit + mu)

    def scaled(self, alpha: complex) -> "ConvergentTail":
        return ConvergentTail(tuple(alpha * v for v in self.prefix), alpha * self.limit)


@dataclass(frozen=True)
class EventuallyPeriodic(AtomicSymbol):
    prefix: tuple[complex, ...]
    period: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", _values(self.prefix))
        object.__setattr__(self, "period", _values(self.period))
        if not self.period:
            raise SymbolValidationError("period must be non-empty")

    def head(self, n: int) -> np.ndarray:
        n = max(n, 0)
        k = min(len(self.prefix), n)
        tail = np.resize(np.array(self.period, dtype=complex), n - k)
        return np.concatenate([np.array(self.prefix[:k], dtype=complex), tail])

    def sup_modulus(self) -> float:
        return max(_max_abs(self.prefix), _max_abs(self.period))

    def tail_sup(self, n: int) -> float:
        # Every period value recurs infinitely often, whatever the phase.
        return max(_max_abs(self.prefix[max(n, 0):]), _max_abs(self.period))

    def tail_start(self, window: float = 0.5) -> int:
        return len(self.prefix)

    def values_closure(self, cfg: AnalysisConfig = DEFAULT_CONFIG) -> SpectralSet:
        return SpectralSet.of_points(_distinct(self.prefix + self.period))

    def shifted(self, mu: complex) -> "EventuallyPeriodic":
        return EventuallyPeriodic(
            tuple(v + mu for v in self.prefix), tuple(v + mu for v in self.period)
        )

    def scaled(self, alpha: complex) -> "EventuallyPeriodic":
        return EventuallyPeriodic(
            tuple(alpha * v for v in self.prefix), tuple(alpha * v for v in self.period)
        )


@dataclass(frozen=True)
class Generator(AtomicSymbol):
    """``lambda_n = expr(n)`` sampled at ``n = 1 .. horizon``.

    Boundedness cannot be proven from samples; construction rejects NaN,
    infinities and moduli above ``BOUND_LIMIT`` among the samples, and every
    quantity computed from a generator is flagged as estimated downstream.
    """

    expr: ex.Expr
    horizon: int = DEFAULT_CONFIG.horizon

    exact = False

    def __post_init__(self) -> None:
        if isinstance(self.expr, str):
            object.__setattr__(self, "expr", ex.parse(self.expr, "n"))
        if ex.free_variables(self.expr) - {"n"}:
            raise SymbolValidationError("generator expressions may only use the variable n")
        if int(self.horizon) < MIN_HORIZON:
            raise SymbolValidationError(f"generator horizon must be >= {MIN_HORIZON}")
        object.__setattr__(self, "horizon", int(self.horizon))
        self.samples  # validate eagerly

    @property
    def text(self) -> str:
        return ex.to_text(self.expr)

    @cached_property
    def samples(self) -> np.ndarray:
        n = np.arange(1, self.horizon + 1, dtype=float)
        try:
            vals = ex.evaluate_array(self.expr, n)
        except DomainError as err:
            raise SymbolValidationError(f"generator undefined on 1..{self.horizon}: {err}") from err
        bad = ~np.isfinite(vals) | (np.abs(vals) > BOUND_LIMIT)
        if np.any(bad):
            first = int(np.argmax(bad)) + 1
            raise SymbolValidationError(
                f"generator is not bounded by {BOUND_LIMIT:g}: lambda_{first} = {vals[first - 1]}"
            )
        vals.setflags(write=False)
        return vals

    @cached_property
    def _suffix_max(self) -> np.ndarray:
        mod = np.abs(self.samples)
        return np.maximum.accumulate(mod[::-1])[::-1]

    def head(self, n: int) -> np.ndarray:
        return self.samples[: max(n, 0)].copy()

    def sup_modulus(self) -> float:
        """Max over the samples, a lower bound for the true supremum."""
        return float(self._suffix_max[0])

    def tail_sup(self, n: int) -> float:
        # Past the horizon the last sample is the only information left.
        idx = min(max(n, 0), self.horizon - 1)
        return float(self._suffix_max[idx])

    def tail_start(self, window: float = 0.5) -> int:
        return self.horizon - max(1, int(round(self.horizon * window)))

    def values_closure(self, cfg: AnalysisConfig = DEFAULT_CONFIG) -> SpectralSet:
        from .frechet import cluster_points

        spacing = cfg.tol(estimated=True)
        vals = self.samples
        cells = np.column_stack(
            [np.floor(vals.real / spacing), np.floor(vals.imag / spacing)]
        )
        _, first = np.unique(cells, axis=0, return_index=True)
        reps = vals[np.sort(first)]
        # Every sample shares a grid cell with its representative.
        cloud = SampleCloud(reps, spacing * math.sqrt(2))
        clusters = cluster_points(self, cfg)
        return SpectralSet((cloud,)).union(SpectralSet.of_points(clusters.points))

    def shifted(self, mu: complex) -> "Generator":
        if mu == 0:
            return self
        return Generator(ex.Add(self.expr, ex.complex_literal(mu)), self.horizon)

    def scaled(self, alpha: complex) -> "Generator":
        return Generator(ex.Mul(ex.complex_literal(alpha), self.expr), self.horizon)
