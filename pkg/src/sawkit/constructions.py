"""Generators for the named extremal families and their closed-form sizes.

Every construction emits its sets in ascending mask order, so file output and
comparisons are canonical.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .families import DENSE_CAP, Family, first_disjoint_pair, first_saw_violation
from .transforms import binomial, popcount_table


def consecutive_layers(n: int, lo: int, hi: int, *, dense_cap: int = DENSE_CAP) -> Family:
    """All subsets of [n] with lo <= |A| <= hi; a (hi - lo)-saw family."""
    if not 0 <= lo <= hi <= n:
        raise ValueError(f"layer bounds 0 <= {lo} <= {hi} <= {n} violated")
    pc = popcount_table(n)
    membership = (pc >= lo) & (pc <= hi)
    return Family.from_membership(n, np.asarray(membership, dtype=bool), dense_cap=dense_cap)


def middle_layers(n: int, t: int, *, dense_cap: int = DENSE_CAP) -> Family:
    """The t+1 consecutive layers starting at floor((n-t)/2): the largest ones."""
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}, n={n}")
    lo = (n - t) // 2
    return consecutive_layers(n, lo, lo + t, dense_cap=dense_cap)


def max_t_saw_size(n: int, t: int) -> int:
    """Closed-form maximum size of a t-saw family on [n]:
    the sum of the t+1 largest binomial coefficients C(n, .)."""
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}, n={n}")
    lo = (n - t) // 2
    return sum(binomial(n, lo + j) for j in range(t + 1))


def star(n: int, i: int) -> Family:
    """All sets containing the fixed element i; intersecting, size 2^(n-1)."""
    if not 1 <= i <= n:
        raise ValueError(f"star element {i} out of range 1..{n}")
    bit = 1 << (i - 1)
    masks = np.arange(1 << n, dtype=np.int64)
    return Family.from_membership(n, (masks & bit) != 0)


def power_set_minus_one(n: int, excluded: int) -> Family:
    """The full power set of [n] with one set removed; (n-1)-saw of size 2^n - 1."""
    if excluded < 0 or excluded >= (1 << n):
        raise ValueError(f"excluded mask {excluded} invalid for n={n}")
    membership = np.ones(1 << n, dtype=bool)
    membership[excluded] = False
    return Family.from_membership(n, membership)


def lightning(k: int) -> Family:
    """The conjectured-extremal intersecting saw family on [2k].

    Members: the k-sets containing element 1, every (k+1)-set, and the
    (k+2)-sets avoiding element 1.
    """
    if k < 1:
        raise ValueError("lightning needs k >= 1")
    n = 2 * k
    pc = popcount_table(n)
    masks = np.arange(1 << n, dtype=np.int64)
    has1 = (masks & 1) != 0
    membership = ((pc == k) & has1) | (pc == k + 1) | ((pc == k + 2) & ~has1)
    fam = Family.from_membership(n, np.asarray(membership, dtype=bool))
    if __debug__ and n <= 12:
        assert first_disjoint_pair(fam) is None, "lightning must be intersecting"
        assert first_saw_violation(fam, 1) is None, "lightning must be saw"
    return fam


def odd_intersecting_extremal(k: int) -> Family:
    """Layers k and k+1 on [2k-1]: the maximum intersecting saw family there."""
    if k < 1:
        raise ValueError("need k >= 1")
    n = 2 * k - 1
    fam = consecutive_layers(n, k, min(k + 1, n))
    if __debug__ and n <= 12:
        assert first_disjoint_pair(fam) is None
        assert first_saw_violation(fam, 1) is None
    return fam


def conjectured_max_intersecting_saw(k: int) -> int:
    """Conjectured maximum size of an intersecting saw family on [2k]."""
    if k < 1:
        raise ValueError("need k >= 1")
    half, rem = divmod(binomial(2 * k, k), 2)
    assert rem == 0
    return half + binomial(2 * k, k + 1) + binomial(2 * k - 1, k + 2)


def intersecting_saw_even_upper_bound(k: int) -> Fraction:
    """Chain-argument upper bound for intersecting saw families on [2k]:
    C(2k,k)/2 + C(2k,k+1) + C(2k,k+2)/2, exact."""
    if k < 1:
        raise ValueError("need k >= 1")
    return (
        Fraction(binomial(2 * k, k), 2)
        + binomial(2 * k, k + 1)
        + Fraction(binomial(2 * k, k + 2), 2)
    )


def extremal_t_saw_families(n: int, t: int) -> list[Family]:
    """The complete predicted list of maximum-size t-saw families on [n].

    One middle window when t and n have the same parity; every co-one-set
    family when t = n - 1; otherwise the two shifted windows.
    """
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}, n={n}")
    if t == n - 1:
        return [power_set_minus_one(n, b) for b in range(1 << n)]
    if (n - t) % 2 == 0:
        lo = (n - t) // 2
        return [consecutive_layers(n, lo, lo + t)]
    lo = (n - t - 1) // 2
    return [
        consecutive_layers(n, lo, lo + t),
        consecutive_layers(n, lo + 1, lo + 1 + t),
    ]


def extremal_intersecting_saw_families_odd(k: int) -> list[Family]:
    """Predicted maximum intersecting saw families on [2k-1]: the two top
    middle layers, plus the three stars when the ground set is [3]."""
    if k < 1:
        raise ValueError("need k >= 1")
    fams = [odd_intersecting_extremal(k)]
    if 2 * k - 1 == 3:
        fams.extend(star(3, i) for i in (1, 2, 3))
    return fams
