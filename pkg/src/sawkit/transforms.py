"""Lattice transforms over 2^n bitmask vectors, exact binomials, and GF(2)
elimination with dependency certificates."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from ._kernels import (
    mobius_subset_inplace,
    zeta_subset_inplace,
    zeta_superset_inplace,
)

MAX_BINOMIAL_N = 64


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); zero when k < 0 or k > n.

    The supported domain is 0 <= n <= 64; larger n is refused so every value
    that reaches downstream integer tables stays well below overflow.
    """
    if n < 0 or n > MAX_BINOMIAL_N:
        raise ValueError(f"binomial: n={n} outside supported range 0..{MAX_BINOMIAL_N}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def popcount_table(n: int) -> np.ndarray:
    """Read-only uint8 array of popcounts for all masks on [n]."""
    if n < 0 or n > 26:
        raise ValueError(f"popcount_table: n={n} out of range")
    pc = np.zeros(1 << n, dtype=np.uint8)
    for d in range(n):
        half = 1 << d
        pc[half : 2 * half] = pc[:half] + 1
    pc.flags.writeable = False
    return pc


def _checked(values: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=np.int64)
    if arr.ndim != 1 or arr.shape[0] == 0 or arr.shape[0] & (arr.shape[0] - 1):
        raise ValueError("lattice vector length must be a power of two")
    return arr


def zeta_subset(values: np.ndarray) -> np.ndarray:
    """out[A] = sum of values[B] over B <= A (subset-sum transform)."""
    out = _checked(values).copy()
    zeta_subset_inplace(out)
    return out


def zeta_superset(values: np.ndarray) -> np.ndarray:
    """out[A] = sum of values[B] over B >= A (superset-sum transform)."""
    out = _checked(values).copy()
    zeta_superset_inplace(out)
    return out


def mobius_subset(values: np.ndarray) -> np.ndarray:
    """Inverse of :func:`zeta_subset`."""
    out = _checked(values).copy()
    mobius_subset_inplace(out)
    return out


def mobius_subset_direct(values: np.ndarray) -> np.ndarray:
    """Alternating-sign inversion, summed term by term.

    Independent of the dimension-by-dimension kernels; intended as a test
    oracle, so it is deliberately the O(4^n) textbook sum.
    """
    arr = _checked(values)
    size = arr.shape[0]
    n = size.bit_length() - 1
    pc = popcount_table(n)
    out = np.zeros(size, dtype=np.int64)
    for a in range(size):
        acc = 0
        for b in range(size):
            if b & ~a:
                continue
            sign = -1 if (int(pc[a]) - int(pc[b])) & 1 else 1
            acc += sign * int(arr[b])
        out[a] = acc
    return out


class Gf2Basis:
    """Incremental GF(2) elimination over bitmask vectors.

    Each reduced row remembers which subset of the inserted vectors produced
    it, so a vanishing reduction yields a dependency certificate directly.
    Rows are kept with pairwise distinct leading bits, highest first, which
    makes certificates deterministic for a fixed insertion order.
    """

    def __init__(self) -> None:
        self._rows: list[tuple[int, int]] = []  # (vector, combo over input indices)
        self._count = 0

    def __len__(self) -> int:
        return len(self._rows)

    def insert(self, vector: int) -> Optional[list[int]]:
        """Insert one vector; return the indices of a dependency if one appears.

        The returned index list includes the vector just inserted and is
        sorted ascending.  Independent vectors extend the basis and return
        None.  Zero vectors are refused: they encode empty sets, which the
        callers exclude by definition.
        """
        if vector < 0:
            raise ValueError("gf2: negative bitmask")
        if vector == 0:
            raise ValueError("gf2: zero vector (empty set) not allowed")
        idx = self._count
        self._count += 1
        vec = vector
        combo = 1 << idx
        for row_vec, row_combo in self._rows:
            if vec == 0:
                break
            if row_vec.bit_length() == vec.bit_length():
                vec ^= row_vec
                combo ^= row_combo
        if vec == 0:
            members = [i for i in range(idx + 1) if combo >> i & 1]
            return members
        # keep rows ordered by leading bit, descending
        pos = 0
        while pos < len(self._rows) and self._rows[pos][0].bit_length() > vec.bit_length():
            pos += 1
        self._rows.insert(pos, (vec, combo))
        return None


def gf2_dependency(vectors: Sequence[int]) -> Optional[list[int]]:
    """Indices of a subfamily whose masks XOR to zero, or None if independent.

    Raises on zero vectors.  Any returned certificate is re-checked to XOR to
    the zero mask before it escapes.
    """
    basis = Gf2Basis()
    vecs = list(vectors)
    for i, vec in enumerate(vecs):
        dep = basis.insert(int(vec))
        if dep is not None:
            acc = 0
            for j in dep:
                acc ^= int(vecs[j])
            if acc != 0:
                raise RuntimeError("gf2: certificate failed its XOR check")
            return dep
    return None
