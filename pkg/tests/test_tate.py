"""Tate-class dimensions: worked instances, the degree bound, the numeric
oracle, and the property suite."""

import random
from math import comb, lcm

import pytest
from mpmath import mp

from conftest import instance_suite, random_weil
from tatecycles.polycore import IntPoly, euler_phi
from tatecycles.tate import (
    PrecisionInsufficientError,
    _classify_distance,
    degree_bound,
    stable_tate_dim,
    tate_dim,
    tate_dim_numeric,
    tate_profile,
    totient_bounded_set,
)
from tatecycles.weil import base_change, product_variety, validate_weil, weil_from_trace


def _supersingular_exe(q=5):
    e = weil_from_trace(0, q)
    return product_variety(e, e)


def _ordinary_exe(a=3, q=5):
    e = weil_from_trace(a, q)
    return product_variety(e, e)


# ---------------------------------------------------------------------------
# worked instances

def test_tate_dim_supersingular_exe():
    w = _supersingular_exe()
    assert tate_dim(w, 1, 1) == 4
    # stable supersingular rank of E x E over the closure
    assert tate_dim(w, 1, 2) == 6


def test_tate_dim_determinant_class():
    w = weil_from_trace(3, 5)
    assert tate_dim(w, 1, 1) == 1
    for inst in instance_suite(10, seed=21):
        assert tate_dim(inst, inst.d, 1) >= 1


def test_tate_dim_rejects_bad_args():
    w = weil_from_trace(0, 5)
    with pytest.raises(ValueError):
        tate_dim(w, 2, 1)
    with pytest.raises(ValueError):
        tate_dim(w, 1, 0)


def test_stable_tate_dim_examples():
    assert stable_tate_dim(_supersingular_exe(), 1) == (6, 2)
    assert stable_tate_dim(_ordinary_exe(), 1) == (4, 1)
    assert stable_tate_dim(weil_from_trace(3, 5), 1) == (1, 1)


def test_stable_dim_attained_at_min_degree():
    for w in instance_suite(25, seed=22):
        for k in range(w.d + 1):
            stable, min_deg = stable_tate_dim(w, k)
            assert tate_dim(w, k, min_deg) == stable
            assert degree_bound(w.d, k) % min_deg == 0
            if min_deg <= 60:  # least degree attaining the stable dimension
                assert all(tate_dim(w, k, n) < stable for n in range(1, min_deg))


# ---------------------------------------------------------------------------
# degree bound

def test_totient_bounded_set_small():
    assert totient_bounded_set(1) == (1, 2)
    assert totient_bounded_set(2) == (1, 2, 3, 4, 6)
    assert lcm(*totient_bounded_set(2)) == 12


def test_degree_bound_examples():
    assert degree_bound(1, 1) == 2
    assert degree_bound(1, 0) == 2
    assert degree_bound(2, 1) == 2520


def test_degree_bound_against_independent_totient_scan():
    # recompute {m : phi(m) <= 6} with a sieve-style totient table
    limit = 20000
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            for mult in range(p, limit + 1, p):
                phi[mult] -= phi[mult] // p
    ms = [m for m in range(1, limit + 1) if phi[m] <= 6]
    assert ms == [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18]
    assert lcm(*ms) == 2520
    assert totient_bounded_set(6) == tuple(ms)


# ---------------------------------------------------------------------------
# profiles

def test_tate_profile_supersingular_exe():
    profile = tate_profile(_supersingular_exe(), n_report=4)
    row0, row1, row2 = profile.rows
    assert row0.k == 0 and row0.stable_dim == 1
    assert all(dim == 1 for _, dim in row0.dims)
    assert row1.dims[:2] == ((1, 4), (2, 6))
    assert row1.stable_dim == 6 and row1.min_stable_degree == 2
    assert row1.degree_bound == 2520
    assert row2.k == 2 and row2.stable_dim >= 1


def test_tate_profile_dims_monotone_under_divisibility():
    for w in instance_suite(10, seed=23):
        profile = tate_profile(w, n_report=12)
        for row in profile.rows:
            dims = dict(row.dims)
            for n in dims:
                for m in dims:
                    if m % n == 0:
                        assert dims[n] <= dims[m]


def test_tate_profile_default_cap():
    profile = tate_profile(_supersingular_exe())
    assert len(profile.rows[1].dims) == 60  # degree bound 2520 capped for display
    assert len(profile.rows[0].dims) == 2   # degree bound 2 not capped


# ---------------------------------------------------------------------------
# numeric oracle

def test_numeric_oracle_supersingular():
    w = _supersingular_exe()
    assert tate_dim_numeric(w, 1, 1) == 4
    assert tate_dim_numeric(w, 1, 2) == 6


def test_numeric_oracle_determinant_class():
    assert tate_dim_numeric(weil_from_trace(0, 5), 1, 1) == 1


def test_numeric_oracle_agrees_on_random_elliptic_products():
    rng = random.Random(24)
    for _ in range(100):
        q = rng.choice([2, 3, 4, 5, 7, 9, 11, 13, 17, 25, 49, 97])
        e1 = weil_from_trace(rng.randint(-int((4 * q) ** 0.5), int((4 * q) ** 0.5)), q)
        e2 = weil_from_trace(rng.randint(-int((4 * q) ** 0.5), int((4 * q) ** 0.5)), q)
        w = product_variety(e1, e2)
        k = rng.randint(0, 2)
        n = rng.randint(1, 6)
        assert tate_dim_numeric(w, k, n) == tate_dim(w, k, n), (w, k, n)


def test_numeric_oracle_guard():
    # 9 elliptic factors give 2d = 18 > the enumeration guard
    w = weil_from_trace(0, 5)
    for _ in range(8):
        w = product_variety(w, weil_from_trace(0, 5))
    with pytest.raises(ValueError):
        tate_dim_numeric(w, 1, 1)


def test_numeric_classifier_ambiguity_band():
    with mp.workprec(100):
        thr = mp.mpf(2) ** -50
        band = mp.mpf(2) ** 25
        assert _classify_distance(mp.mpf(2) ** -90, thr, band) is True
        assert _classify_distance(mp.mpf(0.5), thr, band) is False
        with pytest.raises(PrecisionInsufficientError):
            _classify_distance(thr, thr, band)
        with pytest.raises(PrecisionInsufficientError):
            _classify_distance(thr * band, thr, band)


# ---------------------------------------------------------------------------
# property suite (smaller mirror of the acceptance run)

def test_divisibility_monotonicity():
    for w in instance_suite(25, seed=25):
        for k in range(w.d + 1):
            dims = {n: tate_dim(w, k, n) for n in range(1, 13)}
            for n in dims:
                for m in dims:
                    if m % n == 0:
                        assert dims[n] <= dims[m]


def test_strict_growth_possible():
    w = _supersingular_exe()
    assert tate_dim(w, 1, 1) < tate_dim(w, 1, 2)


def test_duality():
    for w in instance_suite(25, seed=26):
        for k in range(w.d + 1):
            for n in range(1, 7):
                assert tate_dim(w, k, n) == tate_dim(w, w.d - k, n)


def test_base_change_consistency():
    for w in instance_suite(20, seed=27):
        for n in range(1, 5):
            wn = base_change(w, n)
            for k in range(w.d + 1):
                assert tate_dim(w, k, n) == tate_dim(wn, k, 1)


def test_stabilization_at_degree_bound():
    for w in instance_suite(20, seed=28):
        for k in range(w.d + 1):
            stable, _ = stable_tate_dim(w, k)
            bound = degree_bound(w.d, k)
            assert tate_dim(w, k, bound) == stable


def test_no_dimension_exceeds_stable_small_sweep():
    # exhaustive n-sweep to twice the degree bound on dimension-1 instances,
    # plus a long sweep on one abelian-surface instance
    rng = random.Random(29)
    for _ in range(10):
        q = rng.choice([5, 7, 9, 13])
        w = weil_from_trace(rng.randint(-4, 4), q)
        stable, _ = stable_tate_dim(w, 1)
        assert max(tate_dim(w, 1, n) for n in range(1, 2 * degree_bound(1, 1) + 1)) == stable
    w = _supersingular_exe()
    stable, _ = stable_tate_dim(w, 1)
    assert max(tate_dim(w, 1, n) for n in range(1, 2 * 2520 + 1)) == stable


def test_stable_dim_counts_phi_weighted_roots_of_unity():
    # eigenvalue-ratio orders contribute phi(m) per cyclotomic factor: the
    # conductor-37 curve at p=2 has ratio -i, so the stable rank is 4 + phi(4)
    w = _ordinary_exe(a=-2, q=2)
    stable, min_deg = stable_tate_dim(w, 1)
    assert (stable, min_deg) == (6, 4)
    assert tate_dim(w, 1, 4) == 6
    assert tate_dim(w, 1, 2) == 4
    assert tate_dim_numeric(w, 1, 4) == 6
