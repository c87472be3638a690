"""JSON encoding for symbols, spectral sets, operator specs and reports.

Complex numbers are ``[re, im]`` pairs; a bare real number is also accepted
on input.  Unknown keys are rejected everywhere.
"""

from __future__ import annotations

import json
import math
from typing import Any

from . import expr as ex
from .config import AnalysisConfig
from .errors import ExprSyntaxError, SpecFileError, SymbolValidationError
from .frechet import ClusterEstimate
from .operator import CenterOperator, SpectralReport
from .spectra import ClosedDisc, Point, Primitive, SampleCloud, Segment, SpectralSet
from .symbol import (
    AtomicSymbol,
    ConvergentTail,
    EventuallyPeriodic,
    EventuallyZero,
    Finite,
    Generator,
)

SCHEMA_VERSION = 1


def _fail(message: str) -> SpecFileError:
    return SpecFileError(message)


def _check_keys(obj: Any, where: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise _fail(f"{where}: expected an object")
    unknown = set(obj) - required - optional
    if unknown:
        raise _fail(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise _fail(f"{where}: missing key(s) {sorted(missing)}")
    return obj


def encode_complex(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(obj: Any, where: str = "value") -> complex:
    if isinstance(obj, bool):
        raise _fail(f"{where}: expected a number or [re, im]")
    if isinstance(obj, (int, float)):
        return complex(float(obj), 0.0)
    if (isinstance(obj, list) and len(obj) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)):
        return complex(float(obj[0]), float(obj[1]))
    raise _fail(f"{where}: expected a number or [re, im], got {obj!r}")


def _decode_list(obj: Any, where: str) -> tuple[complex, ...]:
    if not isinstance(obj, list):
        raise _fail(f"{where}: expected a list")
    return tuple(decode_complex(v, f"{where}[{i}]") for i, v in enumerate(obj))


def _decode_real(obj: Any, where: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)) or not math.isfinite(obj):
        raise _fail(f"{where}: expected a finite number")
    return float(obj)


# ---------------------------------------------------------------------------
# Symbols


def encode_symbol(sym: AtomicSymbol) -> dict:
    match sym:
        case Finite(values):
            return {"kind": "finite", "values": [encode_complex(v) for v in values]}
        case EventuallyZero(prefix):
            return {"kind": "eventually_zero", "prefix": [encode_complex(v) for v in prefix]}
        case ConvergentTail(prefix, limit):
            return {"kind": "convergent", "prefix": [encode_complex(v) for v in prefix],
                    "limit": encode_complex(limit)}
        case EventuallyPeriodic(prefix, period):
            return {"kind": "eventually_periodic", "prefix": [encode_complex(v) for v in prefix],
                    "period": [encode_complex(v) for v in period]}
        case Generator():
            return {"kind": "generator", "expr": sym.text, "horizon": sym.horizon}
    raise TypeError(f"cannot encode {type(sym).__name__}")


def decode_symbol(obj: Any, default_horizon: int = AnalysisConfig.horizon) -> AtomicSymbol:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise _fail("atomic: expected an object with a 'kind'")
    kind = obj["kind"]
    try:
        if kind == "finite":
            _check_keys(obj, "atomic", {"kind", "values"})
            return Finite(_decode_list(obj["values"], "atomic.values"))
        if kind == "eventually_zero":
            _check_keys(obj, "atomic", {"kind"}, {"prefix"})
            return EventuallyZero(_decode_list(obj.get("prefix", []), "atomic.prefix"))
        if kind == "convergent":
            _check_keys(obj, "atomic", {"kind", "limit"}, {"prefix"})
            return ConvergentTail(_decode_list(obj.get("prefix", []), "atomic.prefix"),
                                  decode_complex(obj["limit"], "atomic.limit"))
        if kind == "eventually_periodic":
            _check_keys(obj, "atomic", {"kind", "period"}, {"prefix"})
            return EventuallyPeriodic(_decode_list(obj.get("prefix", []), "atomic.prefix"),
                                      _decode_list(obj["period"], "atomic.period"))
        if kind == "generator":
            _check_keys(obj, "atomic", {"kind", "expr"}, {"horizon"})
            text = obj["expr"]
            if not isinstance(text, str):
                raise _fail("atomic.expr: expected a string")
            horizon = obj.get("horizon", default_horizon)
            if isinstance(horizon, bool) or not isinstance(horizon, int):
                raise _fail("atomic.horizon: expected an integer")
            try:
                node = ex.parse(text, "n")
            except ExprSyntaxError as err:
                raise SpecFileError(f"atomic.expr: {err}", offset=err.offset) from err
            return Generator(node, horizon)
    except SymbolValidationError as err:
        raise _fail(f"atomic: {err}") from err
    raise _fail(f"atomic: unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# Spectral sets


def encode_primitive(p: Primitive) -> dict:
    match p:
        case Point(z):
            return {"kind": "point", "z": encode_complex(z)}
        case Segment(a, b):
            return {"kind": "segment", "a": encode_complex(a), "b": encode_complex(b)}
        case ClosedDisc(center, radius):
            return {"kind": "disc", "center": encode_complex(center), "radius": radius}
        case SampleCloud():
            return {"kind": "cloud", "points": [encode_complex(z) for z in p.points],
                    "resolution": p.resolution}
    raise TypeError(f"cannot encode {type(p).__name__}")


def decode_primitive(obj: Any, where: str = "nonatomic") -> Primitive:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise _fail(f"{where}: expected an object with a 'kind'")
    kind = obj["kind"]
    try:
        if kind == "point":
            _check_keys(obj, where, {"kind", "z"})
            return Point(decode_complex(obj["z"], f"{where}.z"))
        if kind == "segment":
            _check_keys(obj, where, {"kind", "a", "b"})
            return Segment(decode_complex(obj["a"], f"{where}.a"),
                           decode_complex(obj["b"], f"{where}.b"))
        if kind == "disc":
            _check_keys(obj, where, {"kind", "center", "radius"})
            return ClosedDisc(decode_complex(obj["center"], f"{where}.center"),
                              _decode_real(obj["radius"], f"{where}.radius"))
        if kind == "cloud":
            _check_keys(obj, where, {"kind", "points"}, {"resolution"})
            return SampleCloud(_decode_list(obj["points"], f"{where}.points"),
                               _decode_real(obj.get("resolution", 0.0), f"{where}.resolution"))
    except ValueError as err:
        if isinstance(err, SpecFileError):
            raise
        raise _fail(f"{where}: {err}") from err
    raise _fail(f"{where}: unknown kind {kind!r}")


def encode_set(s: SpectralSet) -> list[dict]:
    return [encode_primitive(p) for p in s]


def decode_set(obj: Any, where: str = "nonatomic") -> SpectralSet:
    if not isinstance(obj, list):
        raise _fail(f"{where}: expected a list of primitives")
    return SpectralSet(tuple(decode_primitive(p, f"{where}[{i}]") for i, p in enumerate(obj)))


# ---------------------------------------------------------------------------
# Operator spec files

_CONFIG_KEYS = {"tolerance", "horizon", "cluster_window", "cluster_checkpoints",
                "spectrum_truncation"}


def decode_config(obj: Any, base: AnalysisConfig | None = None) -> AnalysisConfig:
    base = base or AnalysisConfig()
    if obj is None:
        return base
    _check_keys(obj, "config", set(), _CONFIG_KEYS)
    try:
        return base.with_overrides(**obj)
    except (TypeError, ValueError) as err:
        raise _fail(f"config: {err}") from err


def decode_operator(obj: Any, base: AnalysisConfig | None = None) -> tuple[CenterOperator, AnalysisConfig]:
    _check_keys(obj, "spec", set(), {"label", "atomic", "nonatomic", "config"})
    cfg = decode_config(obj.get("config"), base)
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise _fail("label: expected a string")
    atomic = obj.get("atomic")
    nonatomic = obj.get("nonatomic")
    try:
        return CenterOperator(
            atomic=None if atomic is None else decode_symbol(atomic, cfg.horizon),
            nonatomic=None if nonatomic is None else decode_set(nonatomic),
            label=label,
        ), cfg
    except SpecFileError:
        raise
    except ValueError as err:
        raise _fail(str(err)) from err


def encode_operator(T: CenterOperator) -> dict:
    return {
        "label": T.label,
        "atomic": None if T.atomic is None else encode_symbol(T.atomic),
        "nonatomic": None if T.nonatomic is None else encode_set(T.nonatomic),
    }


def loads_operator(text: str, base: AnalysisConfig | None = None) -> tuple[CenterOperator, AnalysisConfig]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise SpecFileError(f"malformed JSON: {err.msg}", err.lineno, err.colno, err.pos + 1) from err
    return decode_operator(obj, base)


# ---------------------------------------------------------------------------
# Reports

_REPORT_KEYS = {
    "schema", "label", "norm", "essential_norm", "essential_spectral_radius", "spectrum",
    "essential_spectrum", "atomic_clusters", "atomic_limsup", "atomic_liminf", "compact",
    "essentially_quasinilpotent", "invertible", "decomposable", "fredholm", "tolerance",
    "estimated",
}


def encode_report(r: SpectralReport) -> dict:
    clusters = None
    if r.atomic_clusters is not None:
        clusters = {
            "points": [encode_complex(z) for z in r.atomic_clusters.points],
            "method": r.atomic_clusters.method,
            "tolerance": r.atomic_clusters.tolerance,
        }
    return {
        "schema": SCHEMA_VERSION,
        "label": r.label,
        "norm": r.norm,
        "essential_norm": r.essential_norm,
        "essential_spectral_radius": r.essential_spectral_radius,
        "spectrum": encode_set(r.spectrum),
        "essential_spectrum": encode_set(r.essential_spectrum),
        "atomic_clusters": clusters,
        "atomic_limsup": r.atomic_limsup,
        "atomic_liminf": r.atomic_liminf,
        "compact": r.compact,
        "essentially_quasinilpotent": r.essentially_quasinilpotent,
        "invertible": r.invertible,
        "decomposable": r.decomposable,
        "fredholm": [{"mu": encode_complex(mu), "fredholm": ok} for mu, ok in r.fredholm],
        "tolerance": r.tolerance,
        "estimated": r.estimated,
    }


def decode_report(obj: Any) -> SpectralReport:
    _check_keys(obj, "report", _REPORT_KEYS)
    clusters = obj["atomic_clusters"]
    if clusters is not None:
        _check_keys(clusters, "report.atomic_clusters", {"points", "method", "tolerance"})
        clusters = ClusterEstimate(_decode_list(clusters["points"], "atomic_clusters.points"),
                                   clusters["method"], clusters["tolerance"])
    return SpectralReport(
        label=obj["label"],
        norm=obj["norm"],
        essential_norm=obj["essential_norm"],
        essential_spectral_radius=obj["essential_spectral_radius"],
        spectrum=decode_set(obj["spectrum"], "spectrum"),
        essential_spectrum=decode_set(obj["essential_spectrum"], "essential_spectrum"),
        atomic_clusters=clusters,
        atomic_limsup=obj["atomic_limsup"],
        atomic_liminf=obj["atomic_liminf"],
        compact=obj["compact"],
        essentially_quasinilpotent=obj["essentially_quasinilpotent"],
        invertible=obj["invertible"],
        decomposable=obj["decomposable"],
        fredholm=[(decode_complex(f["mu"]), f["fredholm"]) for f in obj["fredholm"]],
        tolerance=obj["tolerance"],
        estimated=obj["estimated"],
    )
