"""Detection of sunflowers, even-sunflowers and odd-sunflowers in families.

The finders work on XOR identities over bitmasks (each member counted once);
the public predicates recompute integer element degrees so certificates are
always re-verified against the definitions themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional, Sequence

from .families import Family, elements_of
from .transforms import gf2_dependency

DEFAULT_ODD_BUDGET = 1 << 20


def _element_degrees(sets: Sequence[int], n_bits: int) -> list[int]:
    degrees = [0] * n_bits
    for mask in sets:
        b = 0
        while mask:
            if mask & 1:
                degrees[b] += 1
            mask >>= 1
            b += 1
    return degrees


def _check_distinct(sets: Sequence[int]) -> None:
    if len(set(sets)) != len(sets):
        raise ValueError("sets must be pairwise distinct")


def is_sunflower(sets: Sequence[int], r: int) -> bool:
    """Classical sunflower test: all pairwise intersections equal the core."""
    if r < 3:
        raise ValueError("a sunflower needs r >= 3 sets")
    sets = [int(s) for s in sets]
    if len(sets) != r:
        raise ValueError(f"expected exactly r={r} sets, got {len(sets)}")
    _check_distinct(sets)
    core = sets[0]
    for s in sets[1:]:
        core &= s
    for a, b in combinations(sets, 2):
        if a & b != core:
            return False
    return True


def is_even_sunflower(sets: Sequence[int]) -> bool:
    """Every covered ground element is covered an even number of times."""
    sets = [int(s) for s in sets]
    if not sets:
        raise ValueError("an even-sunflower is a non-empty family")
    if any(s == 0 for s in sets):
        raise ValueError("even-sunflower members must be non-empty sets")
    _check_distinct(sets)
    union = 0
    for s in sets:
        union |= s
    degrees = _element_degrees(sets, union.bit_length())
    return all(d % 2 == 0 for d in degrees)


def is_odd_sunflower(sets: Sequence[int]) -> bool:
    """Every element of the union is covered an odd number of times."""
    sets = [int(s) for s in sets]
    if len(sets) < 2:
        raise ValueError("an odd-sunflower needs at least two sets")
    if any(s == 0 for s in sets):
        raise ValueError("odd-sunflower members must be non-empty sets")
    _check_distinct(sets)
    union = 0
    for s in sets:
        union |= s
    degrees = _element_degrees(sets, union.bit_length())
    return all(degrees[b] % 2 == 1 for b in range(union.bit_length()) if union >> b & 1)


@dataclass(frozen=True)
class SunflowerCertificate:
    """A witnessing subfamily; ``verify`` re-checks it against its definition."""

    kind: str  # "classical", "even" or "odd"
    members: tuple[int, ...]
    core: Optional[int] = None

    def verify(self) -> bool:
        if self.kind == "classical":
            if not is_sunflower(self.members, len(self.members)):
                return False
            core = self.members[0]
            for s in self.members[1:]:
                core &= s
            return self.core == core
        if self.kind == "even":
            return is_even_sunflower(self.members)
        if self.kind == "odd":
            return is_odd_sunflower(self.members)
        raise ValueError(f"unknown certificate kind {self.kind!r}")


def _certified(cert: SunflowerCertificate) -> SunflowerCertificate:
    if not cert.verify():
        raise RuntimeError(f"internal error: {cert.kind}-sunflower certificate failed re-verification")
    return cert


def find_even_sunflower(fam: Family) -> Optional[SunflowerCertificate]:
    """A subfamily forming an even-sunflower, or None.

    Even-sunflower existence is exactly GF(2) linear dependence of the
    members' characteristic vectors, so absence is an exact verdict.
    """
    if 0 in fam:
        raise ValueError("family must not contain the empty set")
    members = [int(m) for m in fam.masks]
    dep = gf2_dependency(members)
    if dep is None:
        return None
    return _certified(
        SunflowerCertificate(kind="even", members=tuple(members[i] for i in dep))
    )


def find_even_sunflower_bruteforce(fam: Family) -> Optional[SunflowerCertificate]:
    """Exhaustive subfamily scan; the independent oracle for the GF(2) route."""
    if 0 in fam:
        raise ValueError("family must not contain the empty set")
    members = [int(m) for m in fam.masks]
    if len(members) > 20:
        raise ValueError("brute-force scan limited to 20 members")
    for size in range(1, len(members) + 1):
        for combo in combinations(members, size):
            acc = 0
            for s in combo:
                acc ^= s
            if acc == 0:
                return _certified(SunflowerCertificate(kind="even", members=combo))
    return None


class OddSearchStatus(Enum):
    FOUND = "found"
    NONE_EXACT = "none_exact"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class OddSearchResult:
    status: OddSearchStatus
    certificate: Optional[SunflowerCertificate]
    nodes: int


def find_odd_sunflower(fam: Family, budget: int = DEFAULT_ODD_BUDGET) -> OddSearchResult:
    """Search the subfamilies of ``fam`` for an odd-sunflower.

    Subfamilies are enumerated by increasing size and lexicographically
    within a size, so a found certificate is minimal and deterministic.
    Each tested subfamily costs one unit of budget; a family of at most 20
    members finishes within the default budget of 2^20.  An exhausted budget
    yields UNKNOWN, never a silent "none".
    """
    if 0 in fam:
        raise ValueError("family must not contain the empty set")
    members = [int(m) for m in fam.masks]
    nodes = 0
    for size in range(2, len(members) + 1):
        for combo in combinations(members, size):
            nodes += 1
            if nodes > budget:
                return OddSearchResult(OddSearchStatus.UNKNOWN, None, nodes - 1)
            acc = 0
            union = 0
            for s in combo:
                acc ^= s
                union |= s
            if acc == union:
                cert = _certified(SunflowerCertificate(kind="odd", members=combo))
                return OddSearchResult(OddSearchStatus.FOUND, cert, nodes)
    return OddSearchResult(OddSearchStatus.NONE_EXACT, None, nodes)


def classical_core(sets: Sequence[int]) -> int:
    core = int(sets[0])
    for s in sets[1:]:
        core &= int(s)
    return core


def describe_members(members: Sequence[int]) -> list[list[int]]:
    """Members as element lists, for report embedding."""
    return [list(elements_of(int(m))) for m in members]
