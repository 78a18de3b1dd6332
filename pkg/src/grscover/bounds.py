"""Exact combinatorial bounds on the fraction of space covered by decoding balls.

All quantities are computed in exact integer or rational arithmetic: ball
volumes, the weight distribution of an MDS code, the size of the
intersection of two Hamming balls at a given center distance, and the
inclusion-exclusion lower bound on the measure of the union of all balls of
radius tau around codewords.  Nothing here is floating point; rendering to
decimal strings happens only at the edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

from .decode import gs_tau
from .field import _is_prime


def _check_params(q: int, n: int, k: int) -> None:
    if not _is_prime(q):
        raise ValueError(f"modulus must be prime, got {q!r}")
    if not 1 <= k <= n <= q:
        raise ValueError(f"need 1 <= k <= n <= q, got k={k}, n={n}, q={q}")


@lru_cache(maxsize=None)
def vol(q: int, tau: int, n: int) -> int:
    """Number of words in a Hamming ball of radius tau in GF(q)^n."""
    if q < 2:
        raise ValueError(f"alphabet size must be at least 2, got {q}")
    if not 0 <= tau <= n:
        raise ValueError(f"need 0 <= tau <= n, got tau={tau}, n={n}")
    return sum(math.comb(n, j) * (q - 1) ** j for j in range(tau + 1))


def _vol_clamped(q: int, tau: int, n: int) -> int:
    """Ball volume with the radius clamped into [0, n]: empty below, all above."""
    if tau < 0:
        return 0
    if tau >= n:
        return q**n
    return vol(q, tau, n)


def weight_distribution(q: int, n: int, k: int, w: int) -> int:
    """Number of codewords of Hamming weight w in an [n, k] MDS code.

    The count depends only on the parameters, not the particular code.
    Weights outside [0, n] and the gap 0 < w < d have no codewords.
    """
    _check_params(q, n, k)
    if w == 0:
        return 1
    d = n - k + 1
    if w < 0 or w < d or w > n:
        return 0
    total = 0
    for j in range(w - d + 1):
        term = math.comb(w, j) * (q ** (w - d + 1 - j) - 1)
        total += -term if j & 1 else term
    return math.comb(n, w) * total


@lru_cache(maxsize=None)
def ball_intersection(q: int, n: int, w: int, tau: int) -> int:
    """Size of the intersection of two radius-tau balls whose centers differ
    in exactly w coordinates.

    Counts words y by their agreement pattern: z coordinates outside the
    difference support where y matches both centers, u (resp. v) coordinates
    inside it where y matches the first (resp. second) center.  The distance
    conditions become u >= n - tau - z and v >= n - tau - z.
    """
    if q < 2:
        raise ValueError(f"alphabet size must be at least 2, got {q}")
    if not 0 <= w <= n:
        raise ValueError(f"need 0 <= w <= n, got w={w}, n={n}")
    if not 0 <= tau <= n:
        raise ValueError(f"need 0 <= tau <= n, got tau={tau}, n={n}")

    pow_q1 = [(q - 1) ** e for e in range(n - w + 1)]
    pow_q2 = [(q - 2) ** e for e in range(w + 1)]

    # suffix[u][v0] = sum over v in [v0, w-u] of C(w-u, v) * (q-2)**(w-u-v).
    suffix = []
    for u in range(w + 1):
        row = [0] * (w - u + 2)
        for v in range(w - u, -1, -1):
            row[v] = row[v + 1] + math.comb(w - u, v) * pow_q2[w - u - v]
        suffix.append(row)

    def inner(lo: int) -> int:
        total = 0
        for u in range(lo, w + 1):
            if lo <= w - u + 1:
                total += math.comb(w, u) * suffix[u][lo]
        return total

    inner_cache: dict[int, int] = {}
    result = 0
    for z in range(n - w + 1):
        lo = max(0, n - tau - z)
        if lo > w:
            continue
        if lo not in inner_cache:
            inner_cache[lo] = inner(lo)
        result += math.comb(n - w, z) * pow_q1[n - w - z] * inner_cache[lo]
    return result


def union_lower_bound(q: int, n: int, k: int, tau: int) -> int:
    """Inclusion-exclusion lower bound on the number of words within tau of
    some codeword of an [n, k] MDS code.

    The first Bonferroni truncation: the sum of ball sizes minus the sum of
    pairwise intersections.  The result is an exact integer and may be
    negative when the balls overlap heavily.
    """
    _check_params(q, n, k)
    if not 0 <= tau <= n:
        raise ValueError(f"need 0 <= tau <= n, got tau={tau}, n={n}")
    d = n - k + 1
    volume = vol(q, tau, n)
    pair_sum = 0
    for w in range(d, min(2 * tau, n) + 1):
        aw = weight_distribution(q, n, k, w)
        if aw:
            pair_sum += aw * ball_intersection(q, n, w, tau)
    # Ordered center pairs come in mirror-image twos, so the total is even.
    numerator = q**k * (2 * volume - pair_sum)
    assert numerator % 2 == 0
    return numerator // 2


@dataclass(frozen=True)
class BoundReport:
    """Exact coverage-fraction bounds at one decoding radius.

    ``lower_corollary <= lower_exact`` holds for mid-range radii but not
    universally: the closed form's weight-distribution estimate is loose by
    a factor of up to q - 1 at w = d, and where the slack in its
    intersection estimate runs out (k = 1, or the top of the radius window
    at small k) the closed form can exceed the exact bound.  Both values
    are kept and every consumer that selects a radius uses ``lower_exact``.
    """

    q: int
    n: int
    k: int
    d: int
    tau: int
    lower_exact: Fraction
    lower_corollary: Fraction
    upper: Fraction

    def __post_init__(self) -> None:
        # The pairwise-intersection correction is nonnegative, so the
        # inclusion-exclusion bound can never exceed the union bound.
        if not self.lower_exact <= self.upper:
            raise AssertionError(
                f"bound ordering violated at q={self.q}, n={self.n}, "
                f"k={self.k}, tau={self.tau}"
            )


def corollary_bounds(q: int, n: int, k: int, tau: int) -> BoundReport:
    """All three coverage-fraction bounds at radius tau, as exact fractions.

    ``lower_exact`` divides the inclusion-exclusion count by q**n;
    ``lower_corollary`` is its closed-form relaxation, which replaces each
    pairwise intersection with a volume-difference estimate; ``upper`` is
    the union bound q**(k-n) times the ball volume.
    """
    _check_params(q, n, k)
    if not 0 <= tau <= n:
        raise ValueError(f"need 0 <= tau <= n, got tau={tau}, n={n}")
    d = n - k + 1
    volume = vol(q, tau, n)
    upper = Fraction(q**k * volume, q**n)
    lower_exact = Fraction(union_lower_bound(q, n, k, tau), q**n)
    corr = 0
    for w in range(d, min(2 * tau, n) + 1):
        corr += math.comb(n, w) * (
            _vol_clamped(q, tau, w) - _vol_clamped(q, w - tau - 1, w)
        )
    lower_corollary = upper - Fraction(q**k * corr, 2 * q**d)
    return BoundReport(q, n, k, d, tau, lower_exact, lower_corollary, upper)


@dataclass(frozen=True)
class TauScan:
    """Bound reports for every radius strictly between floor(d/2) and d."""

    q: int
    n: int
    k: int
    d: int
    taus: tuple[int, ...]
    bounds: tuple[BoundReport, ...]
    tau_max: int | None
    tau_gs: int


def tau_scan(q: int, n: int, k: int) -> TauScan:
    """Scan radii in the open interval (floor(d/2), d) and locate the one
    maximizing the exact coverage lower bound.

    ``tau_max`` is the smallest maximizing radius, or None when d <= 2
    leaves the interval empty.  ``tau_gs`` is the list-decoding radius for
    comparison.
    """
    _check_params(q, n, k)
    if k >= n:
        raise ValueError(f"need k < n for a nontrivial scan, got k={k}, n={n}")
    d = n - k + 1
    taus = tuple(range(d // 2 + 1, d))
    reports = tuple(corollary_bounds(q, n, k, tau) for tau in taus)
    tau_max: int | None = None
    if taus:
        best = max(r.lower_exact for r in reports)
        for tau, r in zip(taus, reports):
            if r.lower_exact == best:
                tau_max = tau
                break
    return TauScan(q, n, k, d, taus, reports, tau_max, gs_tau(n, k))


def decimal_str(x: Fraction, digits: int = 12) -> str:
    """Render a fraction as a decimal string with ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(x.numerator) / Decimal(x.denominator)
    return str(value)
