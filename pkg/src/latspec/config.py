from __future__ import annotations

from dataclasses import dataclass, replace

EXACT_TOLERANCE = 1e-9
SAMPLED_TOLERANCE = 1e-3
MIN_HORIZON = 1000


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs shared by the analysis routines.

    Attributes:
        tolerance: Explicit tolerance override. ``None`` selects
            ``exact_tolerance`` for exact inputs and ``sampled_tolerance``
            whenever a generator or sample cloud is involved.
        horizon: Default sampling horizon for generator symbols that do not
            specify one.
        cluster_window: Fraction of a generator's samples, counted from the
            end, treated as its tail.
        cluster_checkpoints: Number of disjoint tail windows a sampled cluster
            point has to appear in.
        spectrum_truncation: Maximum number of explicit points shown by text
            reports before the rest is summarised.
    """

    tolerance: float | None = None
    horizon: int = 100_000
    cluster_window: float = 0.5
    cluster_checkpoints: int = 8
    spectrum_truncation: int = 20
    exact_tolerance: float = EXACT_TOLERANCE
    sampled_tolerance: float = SAMPLED_TOLERANCE

    def __post_init__(self) -> None:
        for name in ("tolerance", "exact_tolerance", "sampled_tolerance"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")
        if self.horizon < MIN_HORIZON:
            raise ValueError(f"horizon must be >= {MIN_HORIZON}, got {self.horizon}")
        if not 0 < self.cluster_window <= 1:
            raise ValueError("cluster_window must lie in (0, 1]")
        if self.cluster_checkpoints < 1:
            raise ValueError("cluster_checkpoints must be >= 1")
        if self.spectrum_truncation < 1:
            raise ValueError("spectrum_truncation must be >= 1")

    def tol(self, estimated: bool) -> float:
        if self.tolerance is not None:
            return self.tolerance
        return self.sampled_tolerance if estimated else self.exact_tolerance

    def with_overrides(self, **changes) -> "AnalysisConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


DEFAULT_CONFIG = AnalysisConfig()
