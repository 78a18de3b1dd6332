"""Dense linear algebra over GF(p) on int64 matrices, JIT compiled.

The decoders reduce to one primitive: find a nonzero nullspace vector of a
homogeneous system, or report that the kernel is trivial.  Matrices stay
small (at most a few hundred rows) but the solver sits on the hot path of
the Monte Carlo experiments, hence the numba kernels.

Entries must satisfy 0 <= a < p with p < 2**31, so every intermediate
product fits in int64 when reduced after each multiplication.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _pow_mod(base, exp, p):
    acc = np.int64(1)
    b = base % p
    e = exp
    while e > 0:
        if e & 1:
            acc = (acc * b) % p
        b = (b * b) % p
        e >>= 1
    return acc


@njit(cache=True)
def _echelon(mat, p):
    """In-place forward elimination to row echelon form with unit pivots.

    Returns (rank, pivot_cols) where pivot_cols[:rank] lists the pivot
    column of each of the first ``rank`` rows.
    """
    m, c = mat.shape
    pivot_cols = np.empty(min(m, c), dtype=np.int64)
    r = 0
    for col in range(c):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if mat[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(col, c):
                t = mat[r, j]
                mat[r, j] = mat[piv, j]
                mat[piv, j] = t
        scale = _pow_mod(mat[r, col], p - 2, p)
        if scale != 1:
            for j in range(col, c):
                mat[r, j] = (mat[r, j] * scale) % p
        for i in range(r + 1, m):
            f = mat[i, col]
            if f != 0:
                f = p - f
                for j in range(col, c):
                    mat[i, j] = (mat[i, j] + f * mat[r, j]) % p
        pivot_cols[r] = col
        r += 1
    return r, pivot_cols


@njit(cache=True)
def _back_substitute(mat, p, rank, pivot_cols, free_col):
    """Kernel vector with x[free_col] = 1 and other free variables 0."""
    c = mat.shape[1]
    x = np.zeros(c, dtype=np.int64)
    x[free_col] = 1
    for r in range(rank - 1, -1, -1):
        col = pivot_cols[r]
        acc = np.int64(0)
        for j in range(col + 1, c):
            if mat[r, j] != 0 and x[j] != 0:
                acc = (acc + mat[r, j] * x[j]) % p
        x[col] = (p - acc) % p
    return x


def nullspace_vector(mat: np.ndarray, p: int) -> np.ndarray | None:
    """A nonzero vector x with mat @ x = 0 over GF(p), or None if only x = 0.

    ``mat`` is not modified.  The choice of vector is deterministic: the
    first non-pivot column is set to 1 and the remaining free variables to 0.
    """
    work = np.ascontiguousarray(mat, dtype=np.int64).copy()
    rank, pivot_cols = _echelon(work, p)
    c = work.shape[1]
    if rank == c:
        return None
    pivots = set(pivot_cols[:rank].tolist())
    free_col = next(j for j in range(c) if j not in pivots)
    return _back_substitute(work, p, rank, pivot_cols, free_col)
