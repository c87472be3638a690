import csv

import numpy as np
import pytest

from latspec.errors import BudgetExceedsSamples
from latspec.frechet import cluster_points, limsup_modulus
from latspec.oracle import (
    cluster_oracle,
    compact_consistent,
    compact_tail_check,
    dedupe,
    finite_section_values,
    quotient_norm_oracle,
    write_history_csv,
)
from latspec.symbol import ConvergentTail, EventuallyPeriodic, EventuallyZero, Finite, Generator

from randomized import random_exact_symbol


def test_quotient_oracle_examples():
    res = quotient_norm_oracle([5, 3] + [1] * 98, 10)
    assert res.value == 1.0
    assert res.history[:3] == [(0, 5.0), (1, 3.0), (2, 1.0)]
    assert res.converged
    assert quotient_norm_oracle([0] * 50, 7).value == 0


def test_quotient_oracle_alternating_harmonic():
    n = np.arange(1, 10_001)
    samples = (-1.0) ** n + 1 / n
    res = quotient_norm_oracle(samples, 64)
    # The 65th largest |(-1)^n + 1/n| is at n = 130: 1 + 1/130.
    assert res.value == pytest.approx(1 + 1 / 130, abs=1e-15)
    assert abs(res.value - 1) <= 1e-2
    # More budget and samples push it towards the limsup 1.
    assert abs(quotient_norm_oracle(samples, 5000).value - 1) <= 1e-3


def test_quotient_oracle_brute_force_small():
    # Enumerate every removal set of size k; the oracle must hit the optimum.
    from itertools import combinations

    rng = np.random.default_rng(7)
    vals = rng.normal(size=8) + 1j * rng.normal(size=8)
    res = quotient_norm_oracle(vals, 4)
    for k, value in res.history:
        best = min(
            max((abs(v) for j, v in enumerate(vals) if j not in removed), default=0.0)
            for removed in combinations(range(len(vals)), k)
        )
        assert value == pytest.approx(best, abs=1e-15)


def test_quotient_oracle_history_monotone():
    rng = np.random.default_rng(3)
    res = quotient_norm_oracle(rng.normal(size=500), 100)
    values = [v for _, v in res.history]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert res.budget == 100


def test_quotient_oracle_budget_checks():
    with pytest.raises(BudgetExceedsSamples):
        quotient_norm_oracle([1, 2, 3], 3)
    with pytest.raises(ValueError):
        quotient_norm_oracle([], 0)


def test_cluster_oracle_examples():
    n = np.arange(1, 2001)
    assert sorted(cluster_oracle((-1.0) ** n, 1e-6), key=lambda z: z.real) == [-1, 1]
    assert cluster_oracle(np.full(100, 3 - 2j), 1e-9) == [3 - 2j]


def test_cluster_oracle_harmonic_against_exact():
    n = np.arange(1, 10_001)
    found = cluster_oracle(1 / n, 1e-3)
    exact = cluster_points(ConvergentTail((), 0)).points
    assert len(found) == 1
    assert all(min(abs(f - z) for z in exact) <= 1e-3 for f in found)
    # eps below the spacing at the window start: still no spurious points.
    assert len(cluster_oracle(1 / n, 1e-9)) == 0


def test_cluster_oracle_requires_enough_samples():
    with pytest.raises(ValueError):
        cluster_oracle([1, 2, 3], 0.1, checkpoints=2)


def test_dedupe_tie_break():
    assert dedupe([1, 1 + 1e-4, -1, 0.5j], 1e-3) == [0.5j, 1, -1]
    assert dedupe([], 0.1) == []


@pytest.mark.parametrize("seed", range(50))
def test_cluster_oracle_matches_exact_set(seed):
    rng = np.random.default_rng(500 + seed)
    sym = random_exact_symbol(rng, kinds=("eventually_zero", "convergent", "eventually_periodic"))
    eps = 1e-6
    found = cluster_oracle(sym.head(10_000), eps)
    exact = cluster_points(sym).points
    assert all(min(abs(f - z) for z in exact) <= eps for f in found)
    assert all(min(abs(f - z) for f in found) <= eps for z in exact)


def test_compact_tail_check_examples():
    harmonic = Generator("1/n", horizon=2000)
    bounds = compact_tail_check(harmonic, [10, 100, 1000])
    assert bounds == [(10, 1 / 11), (100, 1 / 101), (1000, 1 / 1001)]
    alt = compact_tail_check(EventuallyPeriodic((), (-1, 1)), [10, 100, 1000])
    assert [b for _, b in alt] == [1, 1, 1] and not compact_consistent(alt)
    assert compact_tail_check(EventuallyZero((9, 9, 9)), [3]) == [(3, 0.0)]
    assert compact_consistent(compact_tail_check(EventuallyZero((9, 9, 9)), [3]))


@pytest.mark.parametrize("seed", range(20))
def test_compact_tail_bounds_monotone(seed):
    rng = np.random.default_rng(800 + seed)
    sym = random_exact_symbol(rng)
    bounds = [b for _, b in compact_tail_check(sym, range(0, 50, 3))]
    assert all(a >= b for a, b in zip(bounds, bounds[1:]))


def test_finite_section_values():
    assert finite_section_values(Generator("1/n", horizon=1000), 3) == pytest.approx([1, 0.5, 1 / 3])
    assert finite_section_values(EventuallyPeriodic((), (1j, -1j)), 4) == [1j, -1j, 1j, -1j]
    assert finite_section_values(Finite((2,)), 5) == [2]
    with pytest.raises(ValueError):
        finite_section_values(Finite((2,)), 0)


@pytest.mark.parametrize("seed", range(20))
def test_finite_sections_lie_in_spectrum(seed):
    rng = np.random.default_rng(900 + seed)
    sym = random_exact_symbol(rng)
    closure = sym.values_closure()
    assert closure.contains_all(finite_section_values(sym, 100), 0)
    # Hausdorff distance from the section to the closure vanishes once the
    # tail model is fully visible.
    section = np.array(finite_section_values(sym, sym.tail_start() + 50))
    reps = closure.representative_points()
    assert max(np.min(np.abs(section - z)) for z in reps) == 0


@pytest.mark.parametrize("seed", range(20))
def test_quotient_oracle_bounds_limsup(seed):
    rng = np.random.default_rng(1200 + seed)
    sym = random_exact_symbol(rng, kinds=("eventually_zero", "convergent", "eventually_periodic"))
    res = quotient_norm_oracle(sym.head(10_000), 64)
    limsup = limsup_modulus(sym)
    # numpy and Python round |z| independently: allow one ulp.
    assert all(v >= limsup * (1 - 1e-15) for _, v in res.history)
    assert res.value - limsup <= 1e-6


def test_history_csv(tmp_path):
    path = tmp_path / "hist.csv"
    write_history_csv({"quotient_norm": quotient_norm_oracle([3, 2, 1, 1], 2)}, path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["quantity", "budget", "value"]
    assert rows[1:] == [["quotient_norm", "0", "3.0"], ["quotient_norm", "1", "2.0"],
                        ["quotient_norm", "2", "1.0"]]
