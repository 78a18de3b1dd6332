"""Independent reference implementations used as oracles by the tests.

Everything here is deliberately written in plain Python loops, separate
from the package's numpy/numba code paths, so a bug in the package cannot
hide in its own oracle.
"""

from __future__ import annotations

import itertools


def ref_encode(q: int, alphas: list[int], vs: list[int], coeffs: list[int]) -> list[int]:
    """Evaluate the message polynomial coordinate-wise, by direct power sums."""
    out = []
    for a, v in zip(alphas, vs):
        acc = 0
        for j, c in enumerate(coeffs):
            acc = (acc + c * pow(a, j, q)) % q
        out.append((v * acc) % q)
    return out


def all_messages(q: int, k: int):
    """Every coefficient vector of length k, lexicographic (constant first)."""
    return itertools.product(range(q), repeat=k)


def ref_distance(a, b) -> int:
    return sum(1 for x, y in zip(a, b) if x != y)


def ref_nearest(q: int, alphas: list[int], vs: list[int], k: int, y: list[int]):
    """Exhaustive nearest-codeword search; ties go to the smaller message."""
    best_coeffs, best_dist = None, len(y) + 1
    for coeffs in all_messages(q, k):
        dist = ref_distance(ref_encode(q, alphas, vs, list(coeffs)), y)
        if dist < best_dist:
            best_coeffs, best_dist = coeffs, dist
    return best_coeffs, best_dist


def ref_list_within(q: int, alphas: list[int], vs: list[int], k: int, y: list[int], tau: int):
    """All messages whose codeword is within tau of y."""
    out = []
    for coeffs in all_messages(q, k):
        if ref_distance(ref_encode(q, alphas, vs, list(coeffs)), y) <= tau:
            out.append(coeffs)
    return out


def ref_rank(rows: list[list[int]], p: int) -> int:
    """Row-echelon rank over GF(p), plain fractions-free elimination."""
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    cols = len(mat[0])
    rank = 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] % p), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] % p:
                f = mat[i][col]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def trim(coeffs) -> tuple[int, ...]:
    """Strip trailing zeros so coefficient vectors compare like polynomials."""
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)
