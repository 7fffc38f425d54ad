"""Set families on [n] = {1, ..., n} stored as bitmask collections.

A set is a machine word: bit i-1 set means element i is present.  A Family
keeps a dense membership table over all 2^n masks plus per-cardinality
("layer") counts; both are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .transforms import binomial, popcount_table, zeta_subset

DENSE_CAP = 24
SPARSE_CAP = 63


def validate_ground_size(n: int, *, dense_cap: int = DENSE_CAP) -> None:
    """Refuse ground sizes whose dense 2^n tables we will not allocate."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"ground size must be a positive integer, got {n!r}")
    if n > dense_cap:
        raise ValueError(
            f"ground size {n} exceeds the dense-table cap {dense_cap}; "
            "dense-mode operations refuse to allocate 2^n entries at this size"
        )


def mask_of(elements: Iterable[int], n: Optional[int] = None) -> int:
    """Bitmask of a set given as 1-based elements."""
    mask = 0
    for e in elements:
        if not isinstance(e, int) or e < 1 or (n is not None and e > n):
            raise ValueError(f"element {e!r} out of range 1..{n}")
        bit = 1 << (e - 1)
        if mask & bit:
            raise ValueError(f"repeated element {e}")
        mask |= bit
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    """1-based elements of a bitmask, ascending."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def saw_threshold(size: int, t: int) -> int:
    """Subset-count budget of a member of cardinality ``size`` at parameter t."""
    return sum(binomial(size, j) for j in range(0, min(t, size) + 1))


class Family:
    """An immutable family of subsets of [n].

    ``masks`` is the ascending member list, ``membership`` the dense boolean
    table indexed by mask, ``layers[i]`` the number of members of size i.
    """

    __slots__ = ("n", "masks", "membership", "layers", "size")

    def __init__(self, n: int, sets: Iterable[int], *, dense_cap: int = DENSE_CAP):
        validate_ground_size(n, dense_cap=dense_cap)
        membership = np.zeros(1 << n, dtype=bool)
        limit = 1 << n
        for mask in sets:
            mask = int(mask)
            if mask < 0:
                raise ValueError(f"negative mask {mask}")
            if mask >= limit:
                raise ValueError(f"set {set_repr(mask)} uses elements outside [{n}]")
            if membership[mask]:
                raise ValueError(f"duplicate set {set_repr(mask)} in family input")
            membership[mask] = True
        self._finish(n, membership)

    @classmethod
    def from_membership(cls, n: int, membership: np.ndarray, *, dense_cap: int = DENSE_CAP) -> "Family":
        """Build directly from a dense boolean table (no per-set validation)."""
        validate_ground_size(n, dense_cap=dense_cap)
        if membership.shape != (1 << n,):
            raise ValueError("membership table has wrong length")
        fam = cls.__new__(cls)
        fam._finish(n, membership.astype(bool, copy=True))
        return fam

    def _finish(self, n: int, membership: np.ndarray) -> None:
        masks = np.nonzero(membership)[0].astype(np.int64)
        pc = popcount_table(n)
        layers = np.bincount(pc[masks], minlength=n + 1).astype(np.int64)
        membership.flags.writeable = False
        masks.flags.writeable = False
        layers.flags.writeable = False
        self.n = n
        self.masks = masks
        self.membership = membership
        self.layers = layers
        self.size = int(masks.shape[0])

    def __len__(self) -> int:
        return self.size

    def __contains__(self, mask: int) -> bool:
        return 0 <= mask < self.membership.shape[0] and bool(self.membership[mask])

    def __iter__(self) -> Iterator[int]:
        return (int(m) for m in self.masks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and self.size == other.size and bool(
            np.array_equal(self.masks, other.masks)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.masks.tobytes()))

    def __repr__(self) -> str:
        if self.size <= 8:
            body = ", ".join(set_repr(int(m)) for m in self.masks)
        else:
            body = f"{self.size} sets"
        return f"Family(n={self.n}, {body})"

    def mask_set(self) -> frozenset[int]:
        return frozenset(int(m) for m in self.masks)


def set_repr(mask: int) -> str:
    els = elements_of(mask)
    return "{" + ",".join(map(str, els)) + "}" if els else "{}"


def family_from_sets(n: int, sets: Iterable[int], *, dense_cap: int = DENSE_CAP) -> Family:
    """Family containing exactly the given masks; duplicates are rejected."""
    return Family(n, sets, dense_cap=dense_cap)


class MuTable:
    """Subset counts mu[A] = |{B in F : B <= A}| for every A, as one array."""

    __slots__ = ("n", "mu")

    def __init__(self, n: int, mu: np.ndarray):
        self.n = n
        mu.flags.writeable = False
        self.mu = mu

    def __getitem__(self, mask: int) -> int:
        return int(self.mu[mask])


def mu_single(fam: Family, mask: int) -> int:
    """Number of members of ``fam`` contained in ``mask`` (including itself).

    Direct submask enumeration; serves as the independent oracle for
    :func:`mu_all`.
    """
    if mask < 0 or mask >= fam.membership.shape[0]:
        raise ValueError(f"mask {mask} invalid for n={fam.n}")
    membership = fam.membership
    count = 0
    sub = mask
    while True:
        if membership[sub]:
            count += 1
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return count


def mu_all(fam: Family) -> MuTable:
    """Subset counts for every mask at once, via the subset-sum transform."""
    vec = fam.membership.astype(np.int64)
    return MuTable(fam.n, zeta_subset(vec))


@dataclass(frozen=True)
class SawViolation:
    mask: int
    mu: int
    allowed: int


def first_saw_violation(fam: Family, t: int) -> Optional[SawViolation]:
    """First member (ascending mask) whose subset count exceeds its budget."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if fam.size == 0:
        return None
    table = mu_all(fam).mu
    pc = popcount_table(fam.n)
    thr = np.array([saw_threshold(s, t) for s in range(fam.n + 1)], dtype=np.int64)
    members = fam.masks
    bad = table[members] > thr[pc[members]]
    idx = np.nonzero(bad)[0]
    if idx.shape[0] == 0:
        return None
    mask = int(members[idx[0]])
    return SawViolation(mask=mask, mu=int(table[mask]), allowed=int(thr[pc[mask]]))


def is_t_saw(fam: Family, t: int) -> bool:
    """Whether every member's subset count stays within the t-saw budget."""
    return first_saw_violation(fam, t) is None


def min_saw_t(fam: Family) -> int:
    """Smallest t for which ``fam`` is t-saw (monotone in t, so well defined)."""
    if fam.size == 0:
        return 0
    table = mu_all(fam).mu
    pc = popcount_table(fam.n)
    worst = 0
    for s in range(fam.n + 1):
        members = fam.masks[pc[fam.masks] == s]
        if members.shape[0] == 0:
            continue
        cumulative = np.cumsum([binomial(s, j) for j in range(s + 1)])
        need = int(np.searchsorted(cumulative, int(table[members].max()), side="left"))
        if need > worst:
            worst = need
    return worst


def first_disjoint_pair(fam: Family) -> Optional[tuple[int, int]]:
    """First pair of members with empty intersection, or None.

    Found with a subset-sum transform evaluated at complements; the first
    offender A (ascending) is paired with its smallest disjoint partner.
    A family containing the empty set is disjoint from itself.
    """
    if fam.size == 0:
        return None
    full = (1 << fam.n) - 1
    counts = zeta_subset(fam.membership.astype(np.int64))
    members = fam.masks
    bad = counts[full ^ members] > 0
    idx = np.nonzero(bad)[0]
    if idx.shape[0] == 0:
        return None
    a = int(members[idx[0]])
    comp = full ^ a
    sub = 0
    while True:
        if fam.membership[sub]:
            return (a, sub)
        if sub == comp:
            break
        sub = (sub - comp) & comp
    raise RuntimeError("disjoint witness vanished; transform out of sync")


def is_intersecting(fam: Family) -> bool:
    """No two members disjoint (the empty set already fails against itself)."""
    return first_disjoint_pair(fam) is None


def is_intersecting_pairwise(fam: Family) -> bool:
    """Quadratic oracle for :func:`is_intersecting`."""
    masks = [int(m) for m in fam.masks]
    for i, a in enumerate(masks):
        for b in masks[i:]:
            if a & b == 0:
                return False
    return True


def is_antichain(fam: Family) -> bool:
    """No member properly contained in another (subset count exactly 1)."""
    if fam.size == 0:
        return True
    table = mu_all(fam).mu
    return bool(np.all(table[fam.masks] == 1))


def bubble_up(fam: Family, a: int, b: int, c: int) -> Family:
    """Exchange a member C below A for the missing cover B of A.

    Requires C < B < A in the subset order with |B| = |A| - 1, A and C in the
    family, B not, and the family saw (t = 1).  The result has the same size
    and is again saw.
    """
    for name, mask in (("A", a), ("B", b), ("C", c)):
        if mask < 0 or mask >= (1 << fam.n):
            raise ValueError(f"bubble_up: {name} invalid for n={fam.n}")
    if b & ~a or b == a:
        raise ValueError("bubble_up: B is not a proper subset of A")
    if c & ~b or c == b:
        raise ValueError("bubble_up: C is not a proper subset of B")
    if bin(b).count("1") != bin(a).count("1") - 1:
        raise ValueError("bubble_up: |B| must equal |A| - 1")
    if a not in fam:
        raise ValueError("bubble_up: A is not in the family")
    if b in fam:
        raise ValueError("bubble_up: B is already in the family")
    if c not in fam:
        raise ValueError("bubble_up: C is not in the family")
    violation = first_saw_violation(fam, 1)
    if violation is not None:
        raise ValueError(
            f"bubble_up: family is not saw (witness {set_repr(violation.mask)} "
            f"with mu={violation.mu})"
        )
    membership = fam.membership.copy()
    membership[c] = False
    membership[b] = True
    return Family.from_membership(fam.n, membership)
