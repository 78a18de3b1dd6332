"""Unique, list, and rate-1 decoders for GRS codes.

All three decoders reduce the generalized code to plain Reed-Solomon form by
dividing each received symbol by its column multiplier, then operate on that
form.  Failure to decode is reported as an empty outcome, never an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._gflinalg import nullspace_vector
from .code import BudgetExceeded, GrsCode, Word, encode, hamming_distance
from .field import DuplicateNode, Poly, lagrange_interpolate

# Interpolation multiplicities are capped rather than silently reduced.
MULTIPLICITY_CAP = 64

# Root extraction scans every field element; keep that enumerable.
_ROOT_SCAN_LIMIT = 1 << 20


class NotRateOne(ValueError):
    """Raised when rate-1 decoding is applied to a code with n != k."""


class MultiplicityOverflow(RuntimeError):
    """Raised when no interpolation multiplicity below the cap satisfies
    the underdetermination requirement."""


@dataclass(frozen=True)
class DecodeOutcome:
    """Decoder result: candidate messages plus the guaranteed radius.

    ``polys`` is empty when decoding failed.  Every returned polynomial has
    degree <= k - 1.  For the unique decoder the list has at most one entry.
    """

    polys: tuple[Poly, ...]
    radius_used: int


@dataclass(frozen=True)
class GsParams:
    """Interpolation multiplicity and weighted-degree cap for list decoding."""

    s: int
    wdeg_cap: int


def gs_tau(n: int, k: int) -> int:
    """List-decoding radius n - 1 - floor(sqrt((k-1)n)), by exact integer sqrt."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return n - 1 - math.isqrt((k - 1) * n)


def _monomial_count(wdeg_cap: int, y_weight: int) -> int:
    """Number of monomials X^a Y^b with a + b*y_weight <= wdeg_cap."""
    if wdeg_cap < 0:
        return 0
    total = 0
    for b in range(wdeg_cap // y_weight + 1):
        total += wdeg_cap - b * y_weight + 1
    return total


def decide_gs_params(n: int, k: int, tau: int) -> GsParams:
    """Smallest interpolation multiplicity that makes list decoding sound.

    For multiplicity s the interpolation system imposes n*s*(s+1)/2 linear
    constraints; a weighted-degree cap of s*(n - tau) - 1 guarantees that any
    message agreeing with the received word on at least n - tau positions is
    a Y-root of the interpolation polynomial.  We pick the smallest s for
    which the count of monomials within the cap strictly exceeds the number
    of constraints, so a nonzero solution always exists.

    Raises
    ------
    MultiplicityOverflow
        If no multiplicity up to MULTIPLICITY_CAP works.
    """
    if k < 2:
        raise ValueError("multiplicity selection requires k >= 2")
    if not 0 <= tau <= gs_tau(n, k):
        raise ValueError(f"tau={tau} outside [0, {gs_tau(n, k)}]")
    for s in range(1, MULTIPLICITY_CAP + 1):
        wdeg_cap = s * (n - tau) - 1
        if _monomial_count(wdeg_cap, k - 1) > n * s * (s + 1) // 2:
            return GsParams(s, wdeg_cap)
    raise MultiplicityOverflow(
        f"no multiplicity <= {MULTIPLICITY_CAP} for n={n}, k={k}, tau={tau}"
    )


def _v_inverse_values(code: GrsCode) -> np.ndarray:
    q = code.field.q
    return np.array([pow(int(v), q - 2, q) for v in code.v_values], dtype=np.int64)


def bw_decode(code: GrsCode, y: Word) -> DecodeOutcome:
    """Unique decoding up to floor((d-1)/2) errors via the key equation.

    Solves E(a_i) * y'_i = N(a_i) for an error locator E of degree <= e and
    a product polynomial N of degree <= k - 1 + e as a homogeneous system,
    then recovers the message as N / E.  Any nonzero solution has E != 0,
    because E = 0 would force the degree-bounded N to vanish at all n points.
    The division, the degree bound, and the final distance are all verified;
    if any fails, or there is no nonzero solution, the outcome is empty.
    """
    if len(y) != code.n or y.field != code.field:
        raise ValueError("word does not match the code")
    n, k, q = code.n, code.k, code.field.q
    e = (code.d - 1) // 2
    yp = (y.values * _v_inverse_values(code)) % q

    # Powers a_i^j as columns, for both blocks of unknowns.
    width = max(e + 1, k + e)
    powers = np.empty((n, width), dtype=np.int64)
    powers[:, 0] = 1
    for j in range(1, width):
        powers[:, j] = (powers[:, j - 1] * code.alpha_values) % q
    mat = np.empty((n, (e + 1) + (k + e)), dtype=np.int64)
    mat[:, : e + 1] = (powers[:, : e + 1] * yp[:, np.newaxis]) % q
    mat[:, e + 1 :] = (-powers[:, : k + e]) % q

    vec = nullspace_vector(mat, q)
    if vec is None:
        return DecodeOutcome((), e)
    locator = Poly(code.field, vec[: e + 1].tolist())
    product = Poly(code.field, vec[e + 1 :].tolist())
    if locator.is_zero():
        return DecodeOutcome((), e)
    f, rem = product.divmod(locator)
    if not rem.is_zero() or f.degree > k - 1:
        return DecodeOutcome((), e)
    if hamming_distance(encode(code, f), y) > e:
        return DecodeOutcome((), e)
    return DecodeOutcome((f,), e)


def rate1_decode(code: GrsCode, y: Word) -> DecodeOutcome:
    """Interpolation decoding of a rate-1 code; always succeeds.

    Raises
    ------
    NotRateOne
        If the code has n != k.
    """
    if code.n != code.k:
        raise NotRateOne(f"rate-1 decode needs n = k, got n={code.n}, k={code.k}")
    if len(y) != code.n or y.field != code.field:
        raise ValueError("word does not match the code")
    q = code.field.q
    yp = (y.values * _v_inverse_values(code)) % q
    points = [
        (a, code.field.element(int(v))) for a, v in zip(code.alphas, yp)
    ]
    try:
        f = lagrange_interpolate(points)
    except DuplicateNode:  # impossible: evaluation points are distinct
        raise AssertionError("distinct alphas produced a duplicate node")
    return DecodeOutcome((f,), 0)


class _GsContext:
    """Per-(code, tau) tables for building interpolation systems quickly."""

    __slots__ = (
        "params",
        "a_arr",
        "b_arr",
        "amax",
        "bmax",
        "alpha_pows",
        "v_inv",
        "terms",
        "n_constraints",
    )

    def __init__(self, code: GrsCode, tau: int) -> None:
        n, k, q = code.n, code.k, code.field.q
        self.params = decide_gs_params(n, k, tau)
        s, wdeg_cap = self.params.s, self.params.wdeg_cap
        mono = [
            (a, b)
            for b in range(wdeg_cap // (k - 1) + 1)
            for a in range(wdeg_cap - b * (k - 1) + 1)
        ]
        self.a_arr = np.array([m[0] for m in mono], dtype=np.int64)
        self.b_arr = np.array([m[1] for m in mono], dtype=np.int64)
        self.amax = int(self.a_arr.max())
        self.bmax = int(self.b_arr.max())

        binom = np.zeros((self.amax + 1, s), dtype=np.int64)
        for x in range(self.amax + 1):
            for r in range(min(x, s - 1) + 1):
                binom[x, r] = math.comb(x, r) % q

        self.alpha_pows = np.empty((n, self.amax + 1), dtype=np.int64)
        self.alpha_pows[:, 0] = 1
        for j in range(1, self.amax + 1):
            self.alpha_pows[:, j] = (
                self.alpha_pows[:, j - 1] * code.alpha_values
            ) % q
        self.v_inv = _v_inverse_values(code)

        # One precomputed slot per Hasse-derivative order (r, t) with r+t < s:
        # the monomial mask a >= r, b >= t, the constant C(a,r)C(b,t), and the
        # clipped power indices a-r, b-t.
        self.terms = []
        for r in range(s):
            for t in range(s - r):
                mask = (self.a_arr >= r) & (self.b_arr >= t)
                coeff = (binom[self.a_arr, r] * binom[self.b_arr, t]) % q
                ai = np.maximum(self.a_arr - r, 0)
                bi = np.maximum(self.b_arr - t, 0)
                self.terms.append((mask, coeff, ai, bi))
        self.n_constraints = n * s * (s + 1) // 2


@lru_cache(maxsize=None)
def _gs_context(code: GrsCode, tau: int) -> _GsContext:
    return _GsContext(code, tau)


def _univariate_roots(coeffs: np.ndarray, q: int) -> list[int]:
    """All roots in GF(q) of the polynomial with the given coefficient array."""
    if q > _ROOT_SCAN_LIMIT:
        raise BudgetExceeded(f"root scan over GF({q}) exceeds {_ROOT_SCAN_LIMIT}")
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in coeffs[::-1]:
        acc = (acc * xs + int(c)) % q
    return np.nonzero(acc == 0)[0].tolist()


def _substitute(C: np.ndarray, gamma: int, q: int) -> np.ndarray:
    """Dense coefficients of Q(X, gamma + X*Y) given those of Q(X, Y)."""
    A, B = C.shape
    out = np.zeros((A + B - 1, B), dtype=np.int64)
    gpow = [1] * B
    for e in range(1, B):
        gpow[e] = (gpow[e - 1] * gamma) % q
    for b in range(B):
        col = C[:, b]
        if not col.any():
            continue
        for t in range(b + 1):
            factor = (math.comb(b, t) * gpow[b - t]) % q
            if factor == 0:
                continue
            out[t : t + A, t] = (out[t : t + A, t] + col * factor) % q
    return out


def _strip_x(C: np.ndarray) -> np.ndarray | None:
    nz = np.nonzero(C.any(axis=1))[0]
    if nz.size == 0:
        return None
    return C[nz[0] :] if nz[0] else C


def _rr_roots(C: np.ndarray, k: int, q: int) -> list[tuple[int, ...]]:
    """All coefficient vectors f (length k) with Q(X, f(X)) identically zero.

    Depth-first search fixing one coefficient per level: after stripping the
    largest power of X dividing Q, the next coefficient must be a root of
    Q(0, Y); the search substitutes Y -> gamma + X*Y and recurses.  At the
    last level the full substituted polynomial must vanish, which makes the
    leaf test exact rather than heuristic.
    """
    out: list[tuple[int, ...]] = []

    def rec(cur: np.ndarray, depth: int, prefix: list[int]) -> None:
        cur = _strip_x(cur)
        if cur is None:
            return
        for gamma in _univariate_roots(cur[0], q):
            if depth == k - 1:
                gpow = np.array(
                    [pow(gamma, b, q) for b in range(cur.shape[1])], dtype=np.int64
                )
                if not ((cur @ gpow) % q).any():
                    out.append(tuple(prefix + [gamma]))
            else:
                rec(_substitute(cur, gamma, q), depth + 1, prefix + [gamma])

    rec(C, 0, [])
    return out


def _compose_is_zero(C: np.ndarray, fcoeffs: list[int], q: int) -> bool:
    """Check Q(X, f(X)) == 0 by Horner's rule in Y with convolution products."""
    B = C.shape[1]
    f = np.array(fcoeffs, dtype=np.int64) if fcoeffs else np.zeros(1, dtype=np.int64)
    acc = np.zeros(1, dtype=np.int64)
    for b in range(B - 1, -1, -1):
        acc = np.convolve(acc, f) % q
        col = C[:, b]
        if len(col) > len(acc):
            acc = np.concatenate([acc, np.zeros(len(col) - len(acc), dtype=np.int64)])
        acc[: len(col)] = (acc[: len(col)] + col) % q
    return not acc.any()


def gs_decode(code: GrsCode, y: Word, tau: int) -> DecodeOutcome:
    """List decoding up to ``tau`` errors by bivariate interpolation.

    Returns every message within distance tau of the received word; the list
    may contain additional messages at greater distance that arise as
    Y-roots of the interpolation polynomial, and callers filter as needed.
    Dimension 1 is handled by an exhaustive scan over the q constants.
    """
    if len(y) != code.n or y.field != code.field:
        raise ValueError("word does not match the code")
    n, k, q = code.n, code.k, code.field.q
    if not 0 <= tau <= gs_tau(n, k):
        raise ValueError(f"tau={tau} outside [0, {gs_tau(n, k)}]")

    if k == 1:
        if q > _ROOT_SCAN_LIMIT:
            raise BudgetExceeded(
                f"constant scan over GF({q}) exceeds {_ROOT_SCAN_LIMIT}"
            )
        yp = (y.values * _v_inverse_values(code)) % q
        values, counts = np.unique(yp, return_counts=True)
        polys = tuple(
            Poly(code.field, [int(c)])
            for c, agree in zip(values, counts)
            if n - int(agree) <= tau
        )
        return DecodeOutcome(polys, tau)

    ctx = _gs_context(code, tau)
    u = (y.values * ctx.v_inv) % q
    upow = np.empty((n, ctx.bmax + 1), dtype=np.int64)
    upow[:, 0] = 1
    for j in range(1, ctx.bmax + 1):
        upow[:, j] = (upow[:, j - 1] * u) % q

    mat = np.empty((ctx.n_constraints, len(ctx.a_arr)), dtype=np.int64)
    row = 0
    for i in range(n):
        xp = ctx.alpha_pows[i]
        up = upow[i]
        for mask, coeff, ai, bi in ctx.terms:
            vals = (coeff * xp[ai]) % q
            vals = (vals * up[bi]) % q
            np.multiply(vals, mask, out=mat[row])
            row += 1

    sol = nullspace_vector(mat, q)
    # Strictly more monomials than constraints, so the kernel is nontrivial.
    assert sol is not None
    C = np.zeros((ctx.amax + 1, ctx.bmax + 1), dtype=np.int64)
    C[ctx.a_arr, ctx.b_arr] = sol

    polys = []
    seen = set()
    for coeffs in _rr_roots(C, k, q):
        f = Poly(code.field, list(coeffs))
        key = f.coeff_values()
        if key in seen:
            continue
        seen.add(key)
        # Independent verification along a different code path than the search.
        assert _compose_is_zero(C, list(coeffs), q)
        polys.append(f)
    return DecodeOutcome(tuple(polys), tau)
