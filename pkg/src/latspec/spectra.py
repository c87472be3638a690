"""Compact subsets of the complex plane as finite unions of primitives.

Spectra, essential spectra and essential ranges are all carried as a
:class:`SpectralSet`.  No simplification is attempted: two sets are compared
only through :meth:`SpectralSet.distance` / :meth:`SpectralSet.contains`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Union

import numpy as np
from scipy.spatial import cKDTree

from .errors import EmptySetError


@dataclass(frozen=True)
class Point:
    z: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", complex(self.z))

    def sup_modulus(self) -> float:
        return abs(self.z)

    def distances(self, zs: np.ndarray) -> np.ndarray:
        return np.abs(zs - self.z)

    def shifted(self, mu: complex) -> "Point":
        return Point(self.z + mu)

    def scaled(self, alpha: complex) -> "Point":
        return Point(alpha * self.z)

    def representatives(self, k: int) -> np.ndarray:
        return np.array([self.z])


@dataclass(frozen=True)
class Segment:
    a: complex
    b: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))

    def sup_modulus(self) -> float:
        # |z| is convex, so its maximum on a segment sits at an endpoint.
        return max(abs(self.a), abs(self.b))

    def distances(self, zs: np.ndarray) -> np.ndarray:
        d = self.b - self.a
        norm2 = d.real * d.real + d.imag * d.imag
        if norm2 == 0:
            return np.abs(zs - self.a)
        t = np.clip(np.real((zs - self.a) * np.conj(d)) / norm2, 0.0, 1.0)
        return np.abs(zs - (self.a + t * d))

    def shifted(self, mu: complex) -> "Segment":
        return Segment(self.a + mu, self.b + mu)

    def scaled(self, alpha: complex) -> "Segment":
        return Segment(alpha * self.a, alpha * self.b)

    def representatives(self, k: int) -> np.ndarray:
        t = np.linspace(0.0, 1.0, max(k, 2))
        return self.a + t * (self.b - self.a)


@dataclass(frozen=True)
class ClosedDisc:
    center: complex
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius >= 0 and math.isfinite(self.radius)):
            raise ValueError(f"disc radius must be finite and >= 0, got {self.radius!r}")

    def sup_modulus(self) -> float:
        return abs(self.center) + self.radius

    def distances(self, zs: np.ndarray) -> np.ndarray:
        return np.maximum(np.abs(zs - self.center) - self.radius, 0.0)

    def shifted(self, mu: complex) -> "ClosedDisc":
        return ClosedDisc(self.center + mu, self.radius)

    def scaled(self, alpha: complex) -> "ClosedDisc":
        return ClosedDisc(alpha * self.center, abs(alpha) * self.radius)

    def representatives(self, k: int) -> np.ndarray:
        k = max(k, 4)
        angles = np.linspace(0.0, 2 * np.pi, k, endpoint=False)
        rim = self.center + self.radius * np.exp(1j * angles)
        inner = self.center + 0.5 * self.radius * np.exp(1j * (angles + 0.5))
        return np.concatenate([[self.center], rim, inner])


@dataclass(frozen=True, eq=False)
class SampleCloud:
    """Finitely many sampled points standing in for a set.

    ``resolution`` bounds how far the represented set may stray from the
    samples; it is added to the sup-modulus and subtracted from distances.
    """

    points: np.ndarray
    resolution: float = 0.0

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=complex).ravel()
        if pts.size == 0:
            raise ValueError("SampleCloud needs at least one point")
        if not np.all(np.isfinite(pts)):
            raise ValueError("SampleCloud points must be finite")
        if not (self.resolution >= 0 and math.isfinite(self.resolution)):
            raise ValueError(f"resolution must be finite and >= 0, got {self.resolution!r}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "resolution", float(self.resolution))

    @cached_property
    def _tree(self) -> cKDTree:
        return cKDTree(np.column_stack([self.points.real, self.points.imag]))

    def sup_modulus(self) -> float:
        return float(np.max(np.abs(self.points))) + self.resolution

    def distances(self, zs: np.ndarray) -> np.ndarray:
        nearest, _ = self._tree.query(np.column_stack([zs.real, zs.imag]))
        return np.maximum(nearest - self.resolution, 0.0)

    def shifted(self, mu: complex) -> "SampleCloud":
        return SampleCloud(self.points + mu, self.resolution)

    def scaled(self, alpha: complex) -> "SampleCloud":
        return SampleCloud(alpha * self.points, abs(alpha) * self.resolution)

    def representatives(self, k: int) -> np.ndarray:
        return self.points


Primitive = Union[Point, Segment, ClosedDisc, SampleCloud]


@dataclass(frozen=True, eq=False)
class SpectralSet:
    primitives: tuple[Primitive, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "primitives", tuple(self.primitives))

    @classmethod
    def of_points(cls, zs: Iterable[complex]) -> "SpectralSet":
        return cls(tuple(Point(z) for z in zs))

    def __iter__(self):
        return iter(self.primitives)

    def __len__(self) -> int:
        return len(self.primitives)

    @property
    def is_empty(self) -> bool:
        return not self.primitives

    @property
    def estimated(self) -> bool:
        return any(isinstance(p, SampleCloud) for p in self.primitives)

    def union(self, other: "SpectralSet") -> "SpectralSet":
        return SpectralSet(self.primitives + other.primitives)

    def sup_modulus(self, require_nonempty: bool = False) -> float:
        """Largest modulus over the set; 0.0 for the empty set unless required."""
        if self.is_empty:
            if require_nonempty:
                raise EmptySetError("sup-modulus of an empty set")
            return 0.0
        return max(p.sup_modulus() for p in self.primitives)

    def distances(self, zs) -> np.ndarray:
        if self.is_empty:
            raise EmptySetError("distance to an empty set")
        zs = np.atleast_1d(np.asarray(zs, dtype=complex))
        out = np.full(zs.shape, np.inf)
        for p in self.primitives:
            out = np.minimum(out, p.distances(zs))
        return out

    def distance(self, z: complex) -> float:
        return float(self.distances(np.array([z]))[0])

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        if self.is_empty:
            return False
        return self.distance(z) <= tol

    def contains_all(self, zs, tol: float = 0.0) -> bool:
        zs = np.atleast_1d(np.asarray(zs, dtype=complex))
        if zs.size == 0:
            return True
        if self.is_empty:
            return False
        return bool(np.all(self.distances(zs) <= tol))

    def shifted(self, mu: complex) -> "SpectralSet":
        return SpectralSet(tuple(p.shifted(mu) for p in self.primitives))

    def scaled(self, alpha: complex) -> "SpectralSet":
        return SpectralSet(tuple(p.scaled(alpha) for p in self.primitives))

    def representative_points(self, per_primitive: int = 16) -> np.ndarray:
        """Points of the set used for sampled subset checks."""
        if self.is_empty:
            return np.empty(0, dtype=complex)
        return np.concatenate([p.representatives(per_primitive) for p in self.primitives])


EMPTY = SpectralSet()


def union(*sets: SpectralSet) -> SpectralSet:
    out = EMPTY
    for s in sets:
        out = out.union(s)
    return out
