"""Seeded random generators for families used by the verification suites.

Everything is driven by numpy PCG64 streams derived from one master seed, so
each suite is reproducible bit for bit.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .families import Family, saw_threshold


def stream(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def random_family(
    n: int, rng: np.random.Generator, max_size: Optional[int] = None
) -> Family:
    """Uniform random subset of the power set, truncated to ``max_size``."""
    universe = 1 << n
    cap = universe if max_size is None else min(max_size, universe)
    size = int(rng.integers(0, cap + 1))
    masks = rng.permutation(universe)[:size]
    return Family(n, sorted(int(m) for m in masks))


def random_saw_family(
    n: int,
    rng: np.random.Generator,
    t: int = 1,
    include_empty: bool = False,
    max_size: Optional[int] = None,
) -> Family:
    """Random maximal-ish t-saw family built by a randomized greedy pass.

    Candidates are visited in a shuffled order and kept whenever the family
    stays t-saw; the subset counts of the chosen sets are maintained
    incrementally, so each candidate costs O(|chosen|).
    """
    universe = 1 << n
    start = 0 if include_empty else 1
    candidates = [start + int(x) for x in rng.permutation(universe - start)]
    chosen_mu: dict[int, int] = {}
    thr = [saw_threshold(s, t) for s in range(n + 1)]
    for cand in candidates:
        if max_size is not None and len(chosen_mu) >= max_size:
            break
        mu_cand = 1
        ok = True
        for mask, mu in chosen_mu.items():
            if mask & ~cand == 0:
                mu_cand += 1
            elif cand & ~mask == 0 and mu + 1 > thr[bin(mask).count("1")]:
                ok = False
                break
        if not ok or mu_cand > thr[bin(cand).count("1")]:
            continue
        for mask in chosen_mu:
            if cand & ~mask == 0:
                chosen_mu[mask] += 1
        chosen_mu[cand] = mu_cand
    return Family(n, sorted(chosen_mu))


def random_intersecting_leaning_family(
    n: int, rng: np.random.Generator, max_size: int
) -> Family:
    """Random family biased toward intersecting shapes (star and chain
    subfamilies, occasionally perturbed); used to exercise the
    no-odd-sunflower implication checks on non-vacuous inputs."""
    mode = int(rng.integers(0, 3))
    universe = 1 << n
    if mode == 0:
        element = int(rng.integers(0, n))
        bit = 1 << element
        pool = [m for m in range(universe) if m & bit]
    elif mode == 1:
        order = [int(x) + 1 for x in rng.permutation(n)]
        pool = []
        mask = 0
        for e in order:
            mask |= 1 << (e - 1)
            pool.append(mask)
    else:
        pool = list(range(1, universe))
    rng.shuffle(pool)
    size = int(rng.integers(1, max_size + 1))
    return Family(n, sorted(set(pool[:size])))


def random_bubble_move(
    fam: Family, rng: np.random.Generator
) -> Optional[tuple[int, int, int]]:
    """A uniformly chosen applicable bubbling move (A, B, C), if any exists.

    Applicable means C < B < A with |B| = |A| - 1, A and C members, B not.
    """
    moves: list[tuple[int, int, int]] = []
    members = [int(m) for m in fam.masks]
    for a in members:
        rest = a
        while rest:
            bit = rest & -rest
            rest ^= bit
            b = a ^ bit
            if b in fam:
                continue
            for c in members:
                if c != b and c & ~b == 0:
                    moves.append((a, b, c))
    if not moves:
        return None
    return moves[int(rng.integers(0, len(moves)))]
