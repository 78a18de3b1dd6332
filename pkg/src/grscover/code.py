"""GRS code construction, encoding, puncturing, and Hamming-metric utilities."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .field import FieldElement, Poly, PrimeField


class MessageTooLong(ValueError):
    """Raised when a message polynomial has degree >= k."""


class CannotPuncture(ValueError):
    """Raised when puncturing would drop the length below the dimension."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its configured budget."""


# Largest modulus for which n codeword symbols can be accumulated with a
# single int64 matrix product (n * q**2 < 2**63 for n <= 64).
_FAST_MODULUS = 1 << 15

_BRUTEFORCE_BUDGET = 10**8
_CODEBOOK_CACHE_ENTRIES = 3 * 10**7  # cache codebooks up to ~30 MB of uint8


class Word:
    """A length-n vector over GF(q), the ambient-space point being covered."""

    __slots__ = ("field", "values")

    def __init__(self, field: PrimeField, symbols: Iterable) -> None:
        vals = []
        for s in symbols:
            if isinstance(s, FieldElement):
                if s.field != field:
                    raise ValueError(f"field mismatch: {field} vs {s.field}")
                vals.append(s.value)
            else:
                vals.append(int(s) % field.q)
        self.field = field
        self.values = np.asarray(vals, dtype=np.int64)
        self.values.flags.writeable = False

    @property
    def symbols(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(int(v), self.field) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Word)
            and other.field == self.field
            and np.array_equal(other.values, self.values)
        )

    def __repr__(self) -> str:
        return f"Word({self.values.tolist()} over {self.field})"


class GrsCode:
    """An [n, k, d] generalized Reed-Solomon code over a prime field.

    Codewords are (v_1 f(a_1), ..., v_n f(a_n)) for message polynomials f of
    degree < k.  The evaluation points must be pairwise distinct and every
    column multiplier nonzero, which makes the code MDS with d = n - k + 1.
    """

    def __init__(
        self,
        field: PrimeField,
        alphas: Sequence[FieldElement],
        vs: Sequence[FieldElement],
        k: int,
    ) -> None:
        n = len(alphas)
        if len(vs) != n:
            raise ValueError(f"{n} evaluation points but {len(vs)} multipliers")
        if not 1 <= k <= n <= field.q:
            raise ValueError(f"need 1 <= k <= n <= q, got k={k}, n={n}, q={field.q}")
        for a in alphas:
            if a.field != field:
                raise ValueError(f"field mismatch: {field} vs {a.field}")
        for v in vs:
            if v.field != field:
                raise ValueError(f"field mismatch: {field} vs {v.field}")
            if v.value == 0:
                raise ValueError("column multipliers must be nonzero")
        if len({a.value for a in alphas}) != n:
            raise ValueError("evaluation points must be pairwise distinct")
        self.field = field
        self.alphas = tuple(alphas)
        self.vs = tuple(vs)
        self.n = n
        self.k = k
        self._alpha_values = np.array([a.value for a in alphas], dtype=np.int64)
        self._alpha_values.flags.writeable = False
        self._v_values = np.array([v.value for v in vs], dtype=np.int64)
        self._v_values.flags.writeable = False
        self._encode_matrix: np.ndarray | None = None

    @classmethod
    def default(cls, q: int, n: int, k: int) -> "GrsCode":
        """The code on evaluation points 0, 1, ..., n-1 with unit multipliers."""
        field = PrimeField(q)
        alphas = [field.element(i) for i in range(n)]
        vs = [field.one()] * n
        return cls(field, alphas, vs, k)

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def alpha_values(self) -> np.ndarray:
        return self._alpha_values

    @property
    def v_values(self) -> np.ndarray:
        return self._v_values

    def _key(self) -> tuple:
        return (
            self.field.q,
            self.k,
            tuple(self._alpha_values.tolist()),
            tuple(self._v_values.tolist()),
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GrsCode) and other._key() == self._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"GrsCode[{self.n},{self.k},{self.d}] over {self.field}"

    def encode_values(self, coeff_values: Sequence[int]) -> np.ndarray:
        """Encode plain integer coefficients (length <= k) to an int64 array."""
        q = self.field.q
        if self._encode_matrix is None:
            # V[i, j] = v_i * a_i**j, so a codeword is V @ coeffs mod q.
            cols = []
            col = self._v_values.copy()
            for _ in range(self.k):
                cols.append(col)
                col = (col * self._alpha_values) % q
            self._encode_matrix = np.stack(cols, axis=1)
        f = np.zeros(self.k, dtype=np.int64)
        f[: len(coeff_values)] = np.asarray(coeff_values, dtype=np.int64)
        if q < _FAST_MODULUS:
            return (self._encode_matrix @ f) % q
        acc = np.zeros(self.n, dtype=np.int64)
        for j in range(self.k):
            acc = (acc + self._encode_matrix[:, j] * f[j]) % q
        return acc


def encode(code: GrsCode, f: Poly) -> Word:
    """Encode the message polynomial f, requiring deg(f) <= k - 1."""
    if f.field != code.field:
        raise ValueError(f"field mismatch: {code.field} vs {f.field}")
    if f.degree > code.k - 1:
        raise MessageTooLong(f"deg(f) = {f.degree} but dimension is {code.k}")
    return Word(code.field, code.encode_values(f.coeff_values()))


def puncture_last(code: GrsCode) -> GrsCode:
    """Drop the last coordinate; shortens d by one and keeps the code MDS."""
    if code.n - 1 < code.k:
        raise CannotPuncture(f"length {code.n - 1} would fall below dimension {code.k}")
    return GrsCode(code.field, code.alphas[:-1], code.vs[:-1], code.k)


def hamming_distance(a: Word, b: Word) -> int:
    """Number of coordinates where the two words differ."""
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return int(np.count_nonzero(a.values != b.values))


_codebook_cache: dict[tuple, np.ndarray] = {}


def _codebook(code: GrsCode) -> np.ndarray | None:
    """All q**k codewords as a (q**k, n) array, message index in base-q order.

    Index m encodes the coefficient vector with the constant term as the most
    significant digit, so ascending index order is lexicographic order on
    (c_0, ..., c_{k-1}).  Returns None when the table would be too large to
    cache; callers then fall back to chunked evaluation.
    """
    q, n, k = code.field.q, code.n, code.k
    if q**k * n > _CODEBOOK_CACHE_ENTRIES or q > 255:
        return None
    key = code._key()
    cb = _codebook_cache.get(key)
    if cb is None:
        count = q**k
        # coeffs[m, i] = digit i of m in base q, constant term most significant.
        idx = np.arange(count, dtype=np.int64)
        coeffs = np.empty((count, k), dtype=np.int64)
        for i in range(k):
            coeffs[:, k - 1 - i] = idx % q
            idx //= q
        vander = np.empty((k, n), dtype=np.int64)
        row = code.v_values.copy()
        for j in range(k):
            vander[j] = row
            row = (row * code.alpha_values) % q
        cb = ((coeffs @ vander) % q).astype(np.uint8)
        _codebook_cache[key] = cb
    return cb


def _index_to_coeffs(m: int, q: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(m % q)
        m //= q
    out.reverse()
    return out


def nearest_codeword_bruteforce(code: GrsCode, y: Word) -> tuple[Poly, int]:
    """Exhaustive nearest-codeword search over all q**k messages.

    Returns the minimizing message and its distance.  Among equidistant
    codewords the lexicographically smallest coefficient vector (constant
    term first) wins, so repeated calls are identical.

    Raises
    ------
    BudgetExceeded
        If q**k exceeds the enumeration budget of 10**8.
    """
    q, n, k = code.field.q, code.n, code.k
    if len(y) != n or y.field != code.field:
        raise ValueError("word does not match the code")
    count = q**k
    if count > _BRUTEFORCE_BUDGET:
        raise BudgetExceeded(f"q**k = {count} exceeds budget {_BRUTEFORCE_BUDGET}")

    if k == 1:
        # The constant decoding y_i / v_i at each coordinate; the best constant
        # maximizes agreements, so it is one of these n values.  np.unique sorts,
        # which makes the first count-maximizer the lexicographically smallest.
        yv = y.values
        vinv = np.array(
            [pow(int(v), q - 2, q) for v in code.v_values], dtype=np.int64
        )
        targets = (yv * vinv) % q
        values, counts = np.unique(targets, return_counts=True)
        best = int(np.argmax(counts))
        return Poly(code.field, [int(values[best])]), n - int(counts[best])

    cb = _codebook(code)
    yv = y.values
    if cb is not None:
        dists = np.count_nonzero(cb != yv[np.newaxis, :].astype(np.uint8), axis=1)
        m = int(np.argmin(dists))
        dist = int(dists[m])
    else:
        vander = np.empty((k, n), dtype=np.int64)
        row = code.v_values.copy()
        for j in range(k):
            vander[j] = row
            row = (row * code.alpha_values) % q
        chunk = 1 << 16
        m, dist = -1, n + 1
        for start in range(0, count, chunk):
            stop = min(start + chunk, count)
            idx = np.arange(start, stop, dtype=np.int64)
            coeffs = np.empty((stop - start, k), dtype=np.int64)
            tmp = idx.copy()
            for i in range(k):
                coeffs[:, k - 1 - i] = tmp % q
                tmp //= q
            words = (coeffs @ vander) % q
            d = np.count_nonzero(words != yv[np.newaxis, :], axis=1)
            local = int(np.argmin(d))
            if int(d[local]) < dist:
                dist = int(d[local])
                m = start + local
        assert m >= 0
    coeffs = _index_to_coeffs(m, q, k)
    return Poly(code.field, coeffs), dist
