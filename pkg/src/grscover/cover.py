"""Covering algorithms: map any ambient vector to a codeword within d - 1.

The main algorithm repeatedly punctures the last coordinate until the chosen
decoder succeeds, then re-encodes the decoded message in the original code.
Each puncture lowers the minimum distance by one, so the rate-1 endpoint
guarantees termination within d - 1 steps, and a decoded message at puncture
depth p sits within (d - 1 - p) + p = d - 1 of the original word.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import (
    GrsCode,
    Word,
    encode,
    nearest_codeword_bruteforce,
    puncture_last,
)
from .decode import bw_decode, gs_decode, gs_tau, rate1_decode
from .field import Poly

DECODER_KINDS = ("bw", "gs", "map")


@dataclass(frozen=True)
class CoverResult:
    """A codeword of the original code within covering distance of the input."""

    message: Poly
    codeword: Word
    distance: int
    punctures: int
    decoder_kind: str


def _lex_key(f: Poly, k: int) -> tuple[int, ...]:
    cv = f.coeff_values()
    return cv + (0,) * (k - len(cv))


def _select(
    code: GrsCode, y_values: np.ndarray, polys, dmax: int
) -> tuple[Poly, np.ndarray, int] | None:
    """Among candidates, the one closest to the original word, ties lexicographic.

    Candidates farther than dmax from the original word are discarded; list
    decoding may surface such extras at deep puncture levels.
    """
    best = None
    best_key = None
    for f in polys:
        cw = code.encode_values(f.coeff_values())
        dist = int(np.count_nonzero(cw != y_values))
        if dist > dmax:
            continue
        key = (dist, _lex_key(f, code.k))
        if best_key is None or key < best_key:
            best_key = key
            best = (f, cw, dist)
    return best


def grs_cover(code: GrsCode, y: Word, decoder_kind: str) -> CoverResult:
    """Find a codeword within distance d - 1 of ``y`` by successive puncturing.

    ``decoder_kind`` selects the per-step decoder: "bw" (unique decoding),
    "gs" (list decoding at the current list-decoding radius), or "map"
    (exhaustive nearest-codeword search, which needs no puncturing).  When
    the current code reaches rate 1, interpolation decoding terminates the
    loop regardless of decoder kind.
    """
    if decoder_kind not in DECODER_KINDS:
        raise ValueError(f"unknown decoder kind {decoder_kind!r}")
    if len(y) != code.n or y.field != code.field:
        raise ValueError("word does not match the code")

    if decoder_kind == "map":
        f, dist = nearest_codeword_bruteforce(code, y)
        return CoverResult(f, encode(code, f), dist, 0, "map")

    dmax = code.d - 1
    current = code
    values = y.values
    punctures = 0
    while True:
        word = Word(code.field, values)
        if current.n == current.k:
            outcome = rate1_decode(current, word)
        elif decoder_kind == "bw":
            outcome = bw_decode(current, word)
        else:
            outcome = gs_decode(current, word, gs_tau(current.n, current.k))
        if outcome.polys:
            chosen = _select(code, y.values, outcome.polys, dmax)
            if chosen is not None:
                f, cw, dist = chosen
                return CoverResult(f, Word(code.field, cw), dist, punctures, decoder_kind)
        # The rate-1 step always yields a candidate within d - 1, so the loop
        # cannot fall through its final iteration.
        current = puncture_last(current)
        values = values[:-1]
        punctures += 1


def grs_cover_baseline(code: GrsCode, y: Word) -> CoverResult:
    """Puncture the last d - 1 coordinates at once and interpolate the rest.

    The decoded message matches ``y`` on the first k coordinates, so its
    codeword differs from ``y`` only among the d - 1 discarded ones.
    """
    if len(y) != code.n or y.field != code.field:
        raise ValueError("word does not match the code")
    k = code.k
    base = GrsCode(code.field, code.alphas[:k], code.vs[:k], k)
    outcome = rate1_decode(base, Word(code.field, y.values[:k]))
    f = outcome.polys[0]
    cw = encode(code, f)
    dist = int(np.count_nonzero(cw.values != y.values))
    return CoverResult(f, cw, dist, code.d - 1, "baseline")


def cover_distance_monotonicity_check(
    code: GrsCode, y: Word, f: Poly | None = None, seed: int = 0
) -> bool:
    """Check that truncating distances to a fixed codeword never increase.

    Encodes a message (random from ``seed`` unless given) at every puncture
    depth and verifies the distance sequence to the truncated word is
    non-increasing.  Dropping a coordinate can only remove a disagreement.
    """
    if len(y) != code.n or y.field != code.field:
        raise ValueError("word does not match the code")
    if f is None:
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
        f = Poly(code.field, rng.integers(0, code.field.q, size=code.k).tolist())
    distances = []
    current = code
    values = y.values
    while True:
        cw = current.encode_values(f.coeff_values())
        distances.append(int(np.count_nonzero(cw != values)))
        if current.n == current.k:
            break
        current = puncture_last(current)
        values = values[:-1]
    return all(b <= a for a, b in zip(distances, distances[1:]))
