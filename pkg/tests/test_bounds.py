"""Combinatorial bounds, checked against enumeration and a clean-room formula."""

import math
from fractions import Fraction

import numpy as np
import pytest

from grscover.bounds import (
    BoundReport,
    ball_intersection,
    corollary_bounds,
    decimal_str,
    tau_scan,
    union_lower_bound,
    vol,
    weight_distribution,
)
from helpers import all_messages, ref_encode


def _all_words(q, n):
    """Every length-n word over GF(q) as a (q**n, n) array, base-q digits."""
    idx = np.arange(q**n)
    cols = []
    for _ in range(n):
        cols.append(idx % q)
        idx //= q
    return np.stack(cols[::-1], axis=1).astype(np.int16)


def _codebook(q, n, k):
    alphas, vs = list(range(n)), [1] * n
    return np.array(
        [ref_encode(q, alphas, vs, list(m)) for m in all_messages(q, k)],
        dtype=np.int16,
    )


def _covered_count(q, n, k, tau):
    """Brute-force count of words within tau of some codeword."""
    words = _all_words(q, n)
    book = _codebook(q, n, k)
    hit = np.zeros(len(words), dtype=bool)
    for cw in book:
        hit |= np.count_nonzero(words != cw, axis=1) <= tau
    return int(hit.sum())


# ----------------------------------------------------------------------- vol

def test_vol_values():
    assert vol(7, 0, 6) == 1
    assert vol(7, 1, 6) == 1 + 6 * 6
    assert vol(7, 6, 6) == 7**6
    assert vol(2, 2, 4) == 1 + 4 + 6
    assert vol(5, 3, 3) == 5**3


def test_vol_matches_enumeration():
    for q, n in [(3, 4), (5, 3)]:
        words = _all_words(q, n)
        weights = np.count_nonzero(words, axis=1)
        for tau in range(n + 1):
            assert vol(q, tau, n) == int((weights <= tau).sum())


def test_vol_monotone_in_radius():
    for tau in range(6):
        assert vol(11, tau, 6) < vol(11, tau + 1, 6)


# ------------------------------------------------------- weight_distribution

@pytest.mark.parametrize("q,n,k", [(5, 4, 2), (7, 6, 1), (7, 6, 2), (7, 6, 3), (11, 10, 2)])
def test_weight_distribution_matches_enumeration(q, n, k):
    weights = np.count_nonzero(_codebook(q, n, k), axis=1)
    hist = np.bincount(weights, minlength=n + 1)
    for w in range(n + 1):
        assert weight_distribution(q, n, k, w) == int(hist[w]), (q, n, k, w)


def test_weight_distribution_known_values():
    # [6,2] over GF(7): distance 5, so only weights 0, 5, 6 occur.
    assert weight_distribution(7, 6, 2, 0) == 1
    assert weight_distribution(7, 6, 2, 5) == 36
    assert weight_distribution(7, 6, 2, 6) == 12
    assert sum(weight_distribution(7, 6, 2, w) for w in range(7)) == 49


def test_weight_distribution_gap_and_tail():
    for w in range(1, 5):
        assert weight_distribution(7, 6, 2, w) == 0
    assert weight_distribution(7, 6, 2, 7) == 0
    assert weight_distribution(7, 6, 2, 100) == 0


def test_weight_distribution_at_minimum_distance():
    for q, n, k in [(7, 6, 2), (11, 10, 4), (13, 9, 3), (47, 46, 20)]:
        d = n - k + 1
        assert weight_distribution(q, n, k, d) == math.comb(n, d) * (q - 1)


def test_weight_distribution_totals_large_code():
    for k in (1, 5, 20, 45):
        total = sum(weight_distribution(47, 46, k, w) for w in range(47))
        assert total == 47**k


# --------------------------------------------------------- ball_intersection

def test_ball_intersection_exhaustive_small():
    q, n = 5, 4
    words = _all_words(q, n)
    for w in range(n + 1):
        center = np.array([1] * w + [0] * (n - w), dtype=np.int16)
        d0 = np.count_nonzero(words, axis=1)
        dc = np.count_nonzero(words != center, axis=1)
        for tau in range(n + 1):
            expect = int(((d0 <= tau) & (dc <= tau)).sum())
            assert ball_intersection(q, n, w, tau) == expect, (w, tau)


@pytest.mark.parametrize("w,tau", [(5, 3), (5, 4), (6, 3), (6, 4), (4, 2)])
def test_ball_intersection_exhaustive_medium(w, tau):
    q, n = 7, 6
    words = _all_words(q, n)
    center = np.array([3] * w + [0] * (n - w), dtype=np.int16)
    d0 = np.count_nonzero(words, axis=1)
    dc = np.count_nonzero(words != center, axis=1)
    expect = int(((d0 <= tau) & (dc <= tau)).sum())
    assert ball_intersection(q, n, w, tau) == expect


def test_ball_intersection_center_independent():
    q, n, w, tau = 7, 6, 5, 4
    words = _all_words(q, n)
    d0 = np.count_nonzero(words, axis=1)
    rng = np.random.default_rng(1)
    counts = set()
    for _ in range(5):
        pos = rng.permutation(n)[:w]
        center = np.zeros(n, dtype=np.int16)
        center[pos] = rng.integers(1, q, size=w)
        dc = np.count_nonzero(words != center, axis=1)
        counts.add(int(((d0 <= tau) & (dc <= tau)).sum()))
    assert counts == {ball_intersection(q, n, w, tau)}


def test_ball_intersection_edge_cases():
    assert ball_intersection(7, 6, 0, 2) == vol(7, 2, 6)
    assert ball_intersection(7, 6, 5, 2) == 0  # centers farther than 2*tau
    assert ball_intersection(7, 6, 6, 6) == 7**6


# --------------------------------------------------------- union_lower_bound

@pytest.mark.parametrize("q,n,k", [(5, 4, 2), (5, 4, 3), (7, 6, 2)])
def test_union_bound_against_enumeration(q, n, k):
    d = n - k + 1
    for tau in range(n + 1):
        covered = _covered_count(q, n, k, tau)
        lower = union_lower_bound(q, n, k, tau)
        assert lower <= covered, (tau, lower, covered)
        if 2 * tau < d:
            # balls are pairwise disjoint, so the bound is exact
            assert lower == covered == (q**k) * vol(q, tau, n)


def test_union_bound_can_go_negative():
    assert union_lower_bound(5, 4, 2, 4) < 0


def test_union_bound_validation():
    with pytest.raises(ValueError):
        union_lower_bound(6, 4, 2, 1)  # composite modulus
    with pytest.raises(ValueError):
        union_lower_bound(5, 4, 2, 5)  # radius beyond the length


# ---------------------------------------------------------- corollary_bounds

def _clean_vol(q, t, m):
    if t < 0:
        return 0
    if t >= m:
        return q**m
    return sum(math.comb(m, j) * (q - 1) ** j for j in range(t + 1))


def _clean_corollary(q, n, k, tau):
    """Closed-form lower bound recomputed from scratch for cross-checking."""
    d = n - k + 1
    total = Fraction(0)
    for w in range(d, min(2 * tau, n) + 1):
        total += math.comb(n, w) * (
            _clean_vol(q, tau, w) - _clean_vol(q, w - tau - 1, w)
        )
    return Fraction(q**k * _clean_vol(q, tau, n), q**n) - Fraction(q**k, 2 * q**d) * total


def test_corollary_matches_clean_room_formula():
    for q, n, k in [(5, 4, 2), (7, 6, 2), (7, 6, 4), (11, 10, 3), (17, 14, 2)]:
        d = n - k + 1
        for tau in range(d // 2 + 1, d):
            r = corollary_bounds(q, n, k, tau)
            assert r.lower_corollary == _clean_corollary(q, n, k, tau)
            assert r.upper == Fraction(q**k * vol(q, tau, n), q**n)
            assert r.lower_exact == Fraction(union_lower_bound(q, n, k, tau), q**n)


def test_corollary_below_exact_in_main_regime():
    # With k >= 2 and tau <= d - 2 the closed form is the weaker bound.
    for q in (5, 7, 11, 13, 17):
        for n in range(2, min(q, 15) + 1):
            for k in range(2, n):
                d = n - k + 1
                for tau in range(d // 2 + 1, d - 1):
                    r = corollary_bounds(q, n, k, tau)
                    assert r.lower_corollary <= r.lower_exact, (q, n, k, tau)


def test_corollary_can_exceed_exact_outside_regime():
    # Pinned counterexamples: dimension 1, and the top radius at k = 2.
    r = corollary_bounds(5, 4, 1, 3)
    assert r.lower_corollary > r.lower_exact
    assert r.lower_corollary > 1  # exceeds even the trivial fraction cap
    r2 = corollary_bounds(17, 14, 2, 12)
    assert r2.lower_corollary > r2.lower_exact


def test_exact_never_exceeds_upper():
    for q, n, k in [(5, 4, 1), (5, 4, 3), (7, 6, 2), (11, 10, 9)]:
        for tau in range(n + 1):
            r = corollary_bounds(q, n, k, tau)
            assert r.lower_exact <= r.upper


def test_report_rejects_inverted_bounds():
    with pytest.raises(AssertionError):
        BoundReport(7, 6, 2, 5, 3, Fraction(1), Fraction(0), Fraction(1, 2))


# ------------------------------------------------------------------ tau_scan

def test_tau_scan_known_instance():
    scan = tau_scan(17, 14, 2)
    assert scan.d == 13
    assert scan.taus == tuple(range(7, 13))
    assert scan.tau_gs == 10
    assert scan.tau_max == 10


def test_tau_scan_window_and_argmax_rule():
    for q, n, k in [(7, 6, 2), (7, 6, 4), (11, 10, 3), (13, 12, 5)]:
        scan = tau_scan(q, n, k)
        d = n - k + 1
        assert scan.taus == tuple(range(d // 2 + 1, d))
        best = max(r.lower_exact for r in scan.bounds)
        first = next(t for t, r in zip(scan.taus, scan.bounds) if r.lower_exact == best)
        assert scan.tau_max == first


def test_tau_scan_empty_window():
    scan = tau_scan(7, 6, 5)  # distance 2: no radius strictly between 1 and 2
    assert scan.taus == ()
    assert scan.bounds == ()
    assert scan.tau_max is None
    assert scan.tau_gs == 1


def test_tau_scan_validation():
    with pytest.raises(ValueError):
        tau_scan(7, 6, 6)  # rate 1
    with pytest.raises(ValueError):
        tau_scan(8, 6, 2)  # composite modulus
    with pytest.raises(ValueError):
        tau_scan(7, 6, 0)


# --------------------------------------------------------------- decimal_str

def test_decimal_str():
    assert decimal_str(Fraction(1, 3)) == "0.333333333333"
    assert decimal_str(Fraction(1, 2)) == "0.5"
    assert decimal_str(Fraction(2, 1)) == "2"
    assert decimal_str(Fraction(-1, 8)) == "-0.125"
    assert decimal_str(Fraction(1, 3), digits=3) == "0.333"
    assert decimal_str(Fraction(0)) == "0"
