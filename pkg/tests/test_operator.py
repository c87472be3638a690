import numpy as np
import pytest

from latspec import (
    AnalysisConfig,
    CenterOperator,
    ClosedDisc,
    ConvergentTail,
    EventuallyPeriodic,
    EventuallyZero,
    Finite,
    Generator,
    NotDecomposable,
    Point,
    Segment,
    SpectralSet,
    analyze,
    decompose,
    essential_norm,
    essential_spectrum,
    is_compact,
    is_essentially_quasinilpotent,
    is_fredholm,
    is_invertible,
    op_norm,
    spectrum,
    translate,
)
from latspec.frechet import limsup_modulus

from randomized import random_operator, random_quasinilpotent_operator

CFG = AnalysisConfig()
ALT = EventuallyPeriodic((), (-1, 1))
SEG_15 = SpectralSet((Segment(0, 1.5),))
SEG_01 = SpectralSet((Segment(0, 1),))


@pytest.fixture(scope="module")
def harmonic():
    return Generator("1/n", horizon=100_000)


@pytest.fixture(scope="module")
def one_plus_harmonic():
    return Generator("1 + 1/n", horizon=100_000)


def test_op_norm_examples():
    assert op_norm(CenterOperator(atomic=ALT)) == 1
    assert op_norm(CenterOperator(nonatomic=SEG_15)) == 1.5
    assert op_norm(CenterOperator(ALT, SEG_15)) == 1.5


def test_spectrum_examples(harmonic):
    s = spectrum(CenterOperator(atomic=harmonic), CFG)
    assert s.contains(0, CFG.tol(True)) and s.contains(1) and s.sup_modulus() == pytest.approx(1, abs=2e-3)
    only = spectrum(CenterOperator(nonatomic=SEG_01), CFG)
    assert only.primitives == SEG_01.primitives
    mixed = spectrum(CenterOperator(ALT, SpectralSet((Point(3),))), CFG)
    assert all(mixed.contains(z) for z in (-1, 1, 3)) and not mixed.contains(0, 0.5)


def test_essential_spectrum_examples(one_plus_harmonic):
    ess = essential_spectrum(CenterOperator(atomic=one_plus_harmonic), CFG)
    assert ess.contains(1, CFG.tol(True)) and not ess.contains(1.5, 0.1)
    mixed = essential_spectrum(CenterOperator(ALT, SEG_01), CFG)
    assert mixed.contains(-1) and mixed.contains(1) and mixed.contains(0.5)
    assert not mixed.contains(-0.5, 0.1)
    assert essential_spectrum(CenterOperator(atomic=Finite((1, 2))), CFG).is_empty


def test_essential_norm_examples(harmonic):
    two_plus = ConvergentTail(tuple(2 + 1 / n for n in range(1, 200)), 2)
    assert essential_norm(CenterOperator(two_plus, SEG_15), CFG) == 2
    assert essential_norm(CenterOperator(atomic=harmonic), CFG) <= 1e-3
    assert essential_norm(CenterOperator(atomic=ConvergentTail((1, 0.5), 0)), CFG) == 0


def test_is_compact_examples(harmonic):
    assert is_compact(CenterOperator(atomic=harmonic), CFG)
    assert not is_compact(CenterOperator(atomic=ALT), CFG)
    assert not is_compact(CenterOperator(nonatomic=SEG_01), CFG)
    assert is_compact(CenterOperator(atomic=Finite((5, 6))), CFG)
    assert is_compact(CenterOperator(nonatomic=SpectralSet((Point(0),))), CFG)


def test_is_fredholm_examples(one_plus_harmonic):
    T = CenterOperator(atomic=one_plus_harmonic)
    assert not is_fredholm(T, 1, CFG)
    assert is_fredholm(T, 0, CFG)
    assert is_fredholm(CenterOperator(nonatomic=SEG_01), 2j, CFG)
    assert is_fredholm(CenterOperator(atomic=Finite((1,))), 1, CFG)


def test_is_invertible_examples(harmonic, one_plus_harmonic):
    assert is_invertible(CenterOperator(atomic=one_plus_harmonic), CFG)
    assert not is_invertible(CenterOperator(atomic=harmonic), CFG)
    assert is_invertible(CenterOperator(nonatomic=SpectralSet((ClosedDisc(3, 1),))), CFG)
    assert not is_invertible(CenterOperator(atomic=EventuallyZero((1, 2))), CFG)


def test_decompose_examples(harmonic):
    T = CenterOperator(harmonic, SEG_01, "T")
    t1, t2 = decompose(T, CFG)
    assert t1.atomic is harmonic and t1.nonatomic is None
    assert t2.atomic is None and t2.nonatomic is SEG_01
    assert is_compact(t1, CFG)

    with pytest.raises(NotDecomposable):
        decompose(CenterOperator(ALT, SEG_01), CFG)
    with pytest.raises(NotDecomposable):
        decompose(CenterOperator(atomic=ALT), CFG)

    only = CenterOperator(atomic=EventuallyZero((2,)))
    t1, t2 = decompose(only, CFG)
    assert t1.atomic == only.atomic
    assert t2.nonatomic.sup_modulus() == 0


def test_decompose_without_atomic_part():
    with pytest.raises(NotDecomposable):
        decompose(CenterOperator(nonatomic=SEG_01), CFG)


def test_quasinilpotent_examples(harmonic, one_plus_harmonic):
    T = CenterOperator(atomic=harmonic)
    assert is_essentially_quasinilpotent(T, CFG) and is_compact(T, CFG)
    assert not is_essentially_quasinilpotent(CenterOperator(nonatomic=SEG_01), CFG)
    assert not is_essentially_quasinilpotent(CenterOperator(atomic=one_plus_harmonic), CFG)


def test_analyze_examples(harmonic):
    r = analyze(CenterOperator(atomic=ALT), CFG)
    assert (r.norm, r.essential_norm, r.essential_spectral_radius) == (1, 1, 1)
    assert set(r.atomic_clusters.points) == {-1, 1} and not r.compact and not r.estimated

    r = analyze(CenterOperator(atomic=harmonic), CFG)
    assert r.norm == 1 and r.essential_norm <= 1e-3 and r.compact and r.estimated
    assert r.tolerance == CFG.sampled_tolerance


def test_analyze_fredholm_queries():
    r = analyze(CenterOperator(ALT, SEG_01), CFG, query_points=(1, 2j, 0.5))
    assert r.fredholm == [(1, False), (2j, True), (0.5, False)]


def test_operator_validation():
    with pytest.raises(ValueError):
        CenterOperator()
    with pytest.raises(ValueError):
        CenterOperator(nonatomic=SpectralSet())


def test_tolerance_override():
    T = CenterOperator(atomic=ConvergentTail((), 1e-4))
    assert not is_compact(T, CFG)
    assert is_compact(T, AnalysisConfig(tolerance=1e-3))


@pytest.mark.parametrize("seed", range(60))
def test_report_invariants(seed):
    rng = np.random.default_rng(3000 + seed)
    T = random_operator(rng)
    r = analyze(T, CFG)
    assert r.essential_norm == r.essential_spectral_radius
    assert r.essential_norm <= r.norm
    assert r.spectrum.contains_all(r.essential_spectrum.representative_points(), r.tolerance)
    if T.atomic is None:
        assert r.essential_norm == r.norm
    if r.essentially_quasinilpotent:
        assert r.compact


@pytest.mark.parametrize("seed", range(30))
def test_decompose_postconditions(seed):
    rng = np.random.default_rng(4000 + seed)
    T = random_operator(rng)
    if T.atomic is None or limsup_modulus(T.atomic) > CFG.tol(False):
        with pytest.raises(NotDecomposable):
            decompose(T, CFG)
        return
    t1, t2 = decompose(T, CFG)
    assert analyze(t1, CFG).compact
    assert essential_norm(t2, CFG) == essential_norm(T, CFG)
    parts = spectrum(t1, CFG).union(spectrum(t2, CFG))
    whole = spectrum(T, CFG)
    assert whole.contains_all(spectrum(t1, CFG).representative_points(), 1e-12)
    if T.nonatomic is not None:
        assert parts.contains_all(whole.representative_points(), 1e-12)
        assert whole.contains_all(parts.representative_points(), 1e-12)


@pytest.mark.parametrize("seed", range(30))
def test_translation(seed):
    rng = np.random.default_rng(5000 + seed)
    T = random_operator(rng)
    mu = complex(rng.integers(-16, 17) / 8, rng.integers(-16, 17) / 8)
    moved = essential_spectrum(translate(T, mu), CFG)
    base = essential_spectrum(T, CFG)
    assert moved.contains_all(base.representative_points() - mu, 1e-9)
    assert base.shifted(-mu).contains_all(moved.representative_points(), 1e-9)


@pytest.mark.parametrize("seed", range(30))
def test_quasinilpotent_implies_compact(seed):
    rng = np.random.default_rng(6000 + seed)
    T = random_quasinilpotent_operator(rng)
    assert is_essentially_quasinilpotent(T, CFG)
    assert is_compact(T, CFG)


def test_generator_and_exact_agree():
    exact = CenterOperator(atomic=ConvergentTail(tuple(1 / n for n in range(1, 1001)), 0))
    sampled = CenterOperator(atomic=Generator("1/n", horizon=10_000))
    assert analyze(exact, CFG).compact and analyze(sampled, CFG).compact
    assert op_norm(exact) == op_norm(sampled) == 1


def test_short_horizon_cannot_resolve_decay():
    # The window max 1/501 sits above the sampled tolerance.
    sampled = CenterOperator(atomic=Generator("1/n", horizon=1000))
    assert essential_norm(sampled, CFG) == 1 / 501
    assert not is_compact(sampled, CFG)
    assert is_compact(sampled, CFG.with_overrides(horizon=1000, tolerance=3e-3))
