"""Spectral analysis of abstract multiplication operators on Banach lattices."""

from .config import AnalysisConfig
from .errors import (
    BudgetExceedsSamples,
    DomainError,
    EmptySetError,
    ExprSyntaxError,
    LatspecError,
    NotDecomposable,
    SpecFileError,
    SymbolValidationError,
    UnknownIdentifier,
)
from .frechet import ClusterEstimate, cluster_points, limsup_modulus, liminf_modulus, quotient_norm
from .operator import (
    CenterOperator,
    SpectralReport,
    analyze,
    decompose,
    essential_norm,
    essential_spectral_radius,
    essential_spectrum,
    is_compact,
    is_essentially_quasinilpotent,
    is_fredholm,
    is_invertible,
    op_norm,
    spectrum,
    translate,
)
from .spectra import ClosedDisc, Point, SampleCloud, Segment, SpectralSet
from .symbol import (
    AtomicSymbol,
    ConvergentTail,
    EventuallyPeriodic,
    EventuallyZero,
    Finite,
    Generator,
)

__version__ = "0.1.0"
