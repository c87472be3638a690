"""Abstract multiplication operators and their spectral quantities.

A center element ``T`` splits into an atomic part, diagonal over the atoms
with multipliers ``lambda_n``, and a non-atomic part.  The non-atomic part is
modelled by its spectrum alone: on that band the essential spectrum equals the
spectrum and the essential norm equals the norm, so nothing else is needed.

Absent parts contribute nothing: an absent atomic part is a band with no
atoms, an absent non-atomic part is a zero band.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT_CONFIG, AnalysisConfig
from .errors import NotDecomposable
from .frechet import ClusterEstimate, cluster_points, limsup_modulus, liminf_modulus
from .spectra import EMPTY, Point, SampleCloud, SpectralSet
from .symbol import AtomicSymbol, Generator


@dataclass(frozen=True, eq=False)
class CenterOperator:
    atomic: AtomicSymbol | None = None
    nonatomic: SpectralSet | None = None
    label: str = ""

    def __post_init__(self) -> None:
        if self.atomic is None and self.nonatomic is None:
            raise ValueError("an operator needs an atomic or a non-atomic part")
        if self.nonatomic is not None and self.nonatomic.is_empty:
            raise ValueError("the non-atomic spectrum must be non-empty; omit the part instead")

    @property
    def estimated(self) -> bool:
        return isinstance(self.atomic, Generator) or (
            self.nonatomic is not None and self.nonatomic.estimated
        )

    def shifted(self, mu: complex) -> "CenterOperator":
        """``T + mu*I``, acting on whichever bands are present."""
        return CenterOperator(
            None if self.atomic is None else self.atomic.shifted(mu),
            None if self.nonatomic is None else self.nonatomic.shifted(mu),
            self.label,
        )

    def scaled(self, alpha: complex) -> "CenterOperator":
        return CenterOperator(
            None if self.atomic is None else self.atomic.scaled(alpha),
            None if self.nonatomic is None else self.nonatomic.scaled(alpha),
            self.label,
        )


def translate(T: CenterOperator, mu: complex) -> CenterOperator:
    """``T - mu*I``."""
    return T.shifted(-mu)


def _tol(T: CenterOperator, cfg: AnalysisConfig) -> float:
    return cfg.tol(T.estimated)


def op_norm(T: CenterOperator) -> float:
    """``||T|| = r(T)``, the largest modulus over both parts."""
    atomic = 0.0 if T.atomic is None else T.atomic.sup_modulus()
    nonatomic = 0.0 if T.nonatomic is None else T.nonatomic.sup_modulus()
    return max(atomic, nonatomic)


def spectrum(T: CenterOperator, cfg: AnalysisConfig = DEFAULT_CONFIG) -> SpectralSet:
    out = EMPTY
    if T.atomic is not None:
        out = out.union(T.atomic.values_closure(cfg))
    if T.nonatomic is not None:
        out = out.union(T.nonatomic)
    return out


def atomic_clusters(T: CenterOperator, cfg: AnalysisConfig = DEFAULT_CONFIG) -> ClusterEstimate | None:
    return None if T.atomic is None else cluster_points(T.atomic, cfg)


def _cluster_set(est: ClusterEstimate) -> SpectralSet:
    if est.is_empty:
        return EMPTY
    if est.method == "sampled":
        return SpectralSet((SampleCloud(est.points, est.tolerance),))
    return SpectralSet.of_points(est.points)


def essential_spectrum(T: CenterOperator, cfg: AnalysisConfig = DEFAULT_CONFIG) -> SpectralSet:
    """Cluster points of the atomic symbol together with the non-atomic spectrum."""
    out = EMPTY
    if T.atomic is not None:
        out = out.union(_cluster_set(cluster_points(T.atomic, cfg)))
    if T.nonatomic is not None:
        out = out.union(T.nonatomic)
    return out


def essential_norm(T: CenterOperator, cfg: AnalysisConfig = DEFAULT_CONFIG) -> float:
    """``||T||_e = r_e(T) = max(limsup |lambda_n|, ||T_nonatomic||)``."""
    atomic = 0.0 if T.atomic is None else limsup_modulus(T.atomic, cfg)
    nonatomic = 0.0 if T.nonatomic is None else T.nonatomic.sup_modulus()
    return max(atomic, nonatomic)


essential_spectral_radius = essential_norm


def is_compact(T: CenterOperator, cfg: AnalysisConfig = DEFAULT_CONFIG) -> bool:
    # A non-atomic band only hosts compact center elements when they vanish.
    tol = _tol(T, cfg)
    if T.atomic is not None and limsup_modulus(T.atomic, cfg) > tol:
        return False
    return T.nonatomic is None or T.nonatomic.sup_modulus() <= tol


def is_fredholm(T: CenterOperator, mu: complex, cfg: AnalysisConfig = DEFAULT_CONFIG) -> bool:
    """Whether ``T - mu*I`` is Fredholm, i.e. ``mu`` lies off the essential spectrum."""
    ess = essential_spectrum(T, cfg)
    if ess.is_empty:
        return True
    return ess.distance(mu) > _tol(T, cfg)


def is_invertible(T: CenterOperator, cfg: AnalysisConfig = DEFAULT_CONFIG) -> bool:
    return spectrum(T, cfg).distance(0) > _tol(T, cfg)


def is_essentially_quasinilpotent(T: CenterOperator, cfg: AnalysisConfig = DEFAULT_CONFIG) -> bool:
    return essential_norm(T, cfg) <= _tol(T, cfg)


def decompose(T: CenterOperator, cfg: AnalysisConfig = DEFAULT_CONFIG) -> tuple[CenterOperator, CenterOperator]:
    """Split ``T = T1 + T2`` with ``T1`` compact carrying the atomic part.

    Raises NotDecomposable unless the atomic part exists and is compact.
    """
    if T.atomic is None:
        raise NotDecomposable("operator has no atomic part to split off")
    limsup = limsup_modulus(T.atomic, cfg)
    if limsup > _tol(T, cfg):
        raise NotDecomposable(
            f"atomic part is not compact: limsup |lambda_n| = {limsup:.6g}"
        )
    label = T.label or "T"
    t1 = CenterOperator(atomic=T.atomic, label=f"{label}_1")
    t2 = CenterOperator(
        nonatomic=T.nonatomic if T.nonatomic is not None else SpectralSet((Point(0),)),
        label=f"{label}_2",
    )
    return t1, t2


@dataclass
class SpectralReport:
    label: str
    norm: float
    essential_norm: float
    essential_spectral_radius: float
    spectrum: SpectralSet
    essential_spectrum: SpectralSet
    atomic_clusters: ClusterEstimate | None
    atomic_limsup: float | None
    atomic_liminf: float | None
    compact: bool
    essentially_quasinilpotent: bool
    invertible: bool
    decomposable: bool
    fredholm: list[tuple[complex, bool]] = field(default_factory=list)
    tolerance: float = 0.0
    estimated: bool = False


def analyze(T: CenterOperator, cfg: AnalysisConfig = DEFAULT_CONFIG,
            query_points: tuple[complex, ...] = ()) -> SpectralReport:
    """Compute every quantity for ``T``; Fredholmness of ``T - mu`` per query point."""
    ess = essential_spectrum(T, cfg)
    ess_norm = essential_norm(T, cfg)
    tol = _tol(T, cfg)
    try:
        decompose(T, cfg)
        decomposable = True
    except NotDecomposable:
        decomposable = False
    return SpectralReport(
        label=T.label,
        norm=op_norm(T),
        essential_norm=ess_norm,
        essential_spectral_radius=ess_norm,
        spectrum=spectrum(T, cfg),
        essential_spectrum=ess,
        atomic_clusters=atomic_clusters(T, cfg),
        atomic_limsup=None if T.atomic is None else limsup_modulus(T.atomic, cfg),
        atomic_liminf=None if T.atomic is None else liminf_modulus(T.atomic, cfg),
        compact=is_compact(T, cfg),
        essentially_quasinilpotent=ess_norm <= tol,
        invertible=is_invertible(T, cfg),
        decomposable=decomposable,
        fredholm=[(complex(mu), is_fredholm(T, mu, cfg)) for mu in query_points],
        tolerance=tol,
        estimated=T.estimated,
    )
