"""Covering search: guarantee, decoder selection, baseline, tie-breaking."""

import numpy as np
import pytest

from grscover.code import GrsCode, Word, encode, hamming_distance
from grscover.cover import (
    DECODER_KINDS,
    CoverResult,
    cover_distance_monotonicity_check,
    grs_cover,
    grs_cover_baseline,
)
from grscover.decode import gs_decode
from grscover.field import Poly
from helpers import ref_nearest


def _random_word(rng, code):
    return Word(code.field, rng.integers(0, code.field.q, size=code.n))


# ---------------------------------------------------------------- guarantee

@pytest.mark.parametrize("kind", DECODER_KINDS)
@pytest.mark.parametrize("q,n,k", [(7, 6, 1), (7, 6, 3), (7, 6, 5), (11, 8, 4)])
def test_cover_guarantee_random_words(kind, q, n, k):
    code = GrsCode.default(q, n, k)
    rng = np.random.default_rng(1000 * q + 10 * n + k)
    for _ in range(60):
        y = _random_word(rng, code)
        r = grs_cover(code, y, kind)
        assert r.decoder_kind == kind
        assert r.distance <= code.d - 1
        assert r.punctures <= code.d - 1
        assert r.codeword == encode(code, r.message)
        assert hamming_distance(r.codeword, y) == r.distance
        assert r.message.degree <= k - 1


@pytest.mark.parametrize("kind", DECODER_KINDS)
def test_cover_codeword_is_fixed_point(kind):
    code = GrsCode.default(7, 6, 3)
    rng = np.random.default_rng(3)
    for _ in range(20):
        f = Poly(code.field, rng.integers(0, 7, size=3).tolist())
        r = grs_cover(code, encode(code, f), kind)
        assert r.message == f
        assert r.distance == 0
        assert r.punctures == 0


def test_cover_map_matches_exhaustive_search():
    code = GrsCode.default(7, 6, 2)
    rng = np.random.default_rng(7)
    for _ in range(40):
        y = _random_word(rng, code)
        r = grs_cover(code, y, "map")
        coeffs, dist = ref_nearest(7, list(range(6)), [1] * 6, 2, y.values.tolist())
        assert r.distance == dist
        assert r.punctures == 0
        assert np.array_equal(
            r.codeword.values,
            np.array([c % 7 for c in _ref_cw(7, coeffs)], dtype=np.int64),
        )


def _ref_cw(q, coeffs):
    from helpers import ref_encode

    return ref_encode(q, list(range(6)), [1] * 6, list(coeffs))


def test_cover_map_with_multipliers():
    f0 = GrsCode.default(5, 4, 2).field
    alphas = [f0.element(a) for a in [0, 1, 3, 4]]
    vs = [f0.element(v) for v in [2, 1, 4, 3]]
    code = GrsCode(f0, alphas, vs, 2)
    rng = np.random.default_rng(9)
    for _ in range(30):
        y = _random_word(rng, code)
        r = grs_cover(code, y, "map")
        _, dist = ref_nearest(5, [0, 1, 3, 4], [2, 1, 4, 3], 2, y.values.tolist())
        assert r.distance == dist


def test_cover_bw_punctures_deep_holes():
    # Words beyond the unique radius of every truncation level force at
    # least one puncture; the guarantee must still hold.
    code = GrsCode.default(7, 6, 2)
    rng = np.random.default_rng(13)
    punctured = 0
    for _ in range(120):
        y = _random_word(rng, code)
        full = grs_cover(code, y, "map")
        r = grs_cover(code, y, "bw")
        if full.distance > (code.d - 1) // 2:
            assert r.punctures >= 1
            punctured += 1
        assert r.distance <= code.d - 1
    assert punctured > 0


def test_cover_gs_never_more_punctures_than_bw():
    code = GrsCode.default(7, 6, 4)
    rng = np.random.default_rng(17)
    for _ in range(80):
        y = _random_word(rng, code)
        assert (
            grs_cover(code, y, "gs").punctures <= grs_cover(code, y, "bw").punctures
        )


def test_cover_tie_breaks_lexicographically():
    # Frozen instance: two list-decoded candidates at equal distance 3;
    # the constant one is lexicographically smaller and must win.
    code = GrsCode.default(7, 6, 2)
    y = Word(code.field, [4, 1, 2, 4, 2, 2])
    out = gs_decode(code, y, 3)
    close = {
        g.coeff_values()
        for g in out.polys
        if hamming_distance(encode(code, g), y) == 3
    }
    assert {(2,), (3, 5)} <= close
    r = grs_cover(code, y, "gs")
    assert r.message.coeff_values() == (2,)
    assert r.distance == 3


# ----------------------------------------------------------------- baseline

def test_baseline_always_max_punctures():
    code = GrsCode.default(7, 6, 2)
    rng = np.random.default_rng(21)
    for _ in range(50):
        y = _random_word(rng, code)
        r = grs_cover_baseline(code, y)
        assert r.punctures == code.d - 1
        assert r.decoder_kind == "baseline"
        assert r.distance <= code.d - 1
        assert r.codeword == encode(code, r.message)
        # the decoded codeword agrees with y on the kept prefix
        assert np.array_equal(r.codeword.values[: code.k], y.values[: code.k])


def test_baseline_recovers_tail_corruption():
    code = GrsCode.default(11, 8, 3)
    rng = np.random.default_rng(23)
    for _ in range(40):
        f = Poly(code.field, rng.integers(0, 11, size=3).tolist())
        vals = encode(code, f).values.copy()
        for i in range(code.k, code.n):  # touch only discarded coordinates
            vals[i] = int(rng.integers(0, 11))
        r = grs_cover_baseline(code, Word(code.field, vals))
        assert r.message == f


def test_baseline_with_multipliers():
    f0 = GrsCode.default(7, 5, 2).field
    alphas = [f0.element(a) for a in [1, 2, 4, 5, 6]]
    vs = [f0.element(v) for v in [3, 3, 5, 1, 2]]
    code = GrsCode(f0, alphas, vs, 2)
    y = Word(f0, [4, 0, 6, 1, 2])
    r = grs_cover_baseline(code, y)
    assert np.array_equal(r.codeword.values[:2], y.values[:2])
    assert r.punctures == code.d - 1


# ------------------------------------------------------------- monotonicity

def test_distance_monotone_under_puncturing():
    code = GrsCode.default(7, 6, 2)
    rng = np.random.default_rng(29)
    for trial in range(50):
        y = _random_word(rng, code)
        assert cover_distance_monotonicity_check(code, y, seed=trial)


def test_distance_monotone_explicit_message():
    code = GrsCode.default(11, 10, 4)
    f = Poly(code.field, [1, 2, 3, 4])
    y = Word(code.field, [5] * 10)
    assert cover_distance_monotonicity_check(code, y, f=f)


# -------------------------------------------------------------- error paths

def test_cover_rejects_unknown_decoder():
    code = GrsCode.default(7, 6, 2)
    y = Word(code.field, [0] * 6)
    with pytest.raises(ValueError):
        grs_cover(code, y, "syndrome")


def test_cover_rejects_mismatched_word():
    code = GrsCode.default(7, 6, 2)
    with pytest.raises(ValueError):
        grs_cover(code, Word(code.field, [0] * 5), "bw")
    with pytest.raises(ValueError):
        grs_cover_baseline(code, Word(code.field, [0] * 5))
    with pytest.raises(ValueError):
        cover_distance_monotonicity_check(code, Word(code.field, [0] * 5))


def test_result_is_frozen():
    code = GrsCode.default(7, 6, 2)
    r = grs_cover(code, encode(code, Poly(code.field, [1, 1])), "bw")
    assert isinstance(r, CoverResult)
    with pytest.raises(AttributeError):
        r.distance = 0
