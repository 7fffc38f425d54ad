"""Maximal-chain statistics: exact expectations, Monte Carlo cross-checks,
chain-maximal members, and the chain bound for saw families.

All verdict-grade quantities are exact rationals; sampling exists only as an
independent cross-check and never decides anything.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional

import numpy as np

from .families import Family, first_saw_violation, mu_all, set_repr
from .transforms import binomial, popcount_table

MC_CHUNK = 4096


def lym_sum(fam: Family) -> Fraction:
    """Sum of |F_i| / C(n, i): the expected number of members on a uniform
    maximal chain."""
    total = Fraction(0)
    for i in range(fam.n + 1):
        count = int(fam.layers[i])
        if count:
            total += Fraction(count, binomial(fam.n, i))
    return total


def expected_weight(fam: Family) -> Fraction:
    """Expected weight of the chain hits, computed layer by layer.

    Each layer contributes C(n,i) * |F_i| / C(n,i); the total must equal |F|
    exactly, which is the identity the test suite pins down.
    """
    total = Fraction(0)
    for i in range(fam.n + 1):
        count = int(fam.layers[i])
        if count:
            total += binomial(fam.n, i) * Fraction(count, binomial(fam.n, i))
    return total


@dataclass(frozen=True)
class ChainStats:
    lym_sum: Fraction
    expected_weight: Fraction
    hits_by_layer: tuple[Fraction, ...]


def chain_stats(fam: Family) -> ChainStats:
    hits = tuple(
        Fraction(int(fam.layers[i]), binomial(fam.n, i)) for i in range(fam.n + 1)
    )
    return ChainStats(lym_sum=lym_sum(fam), expected_weight=expected_weight(fam), hits_by_layer=hits)


@dataclass(frozen=True)
class MaximalChain:
    """A maximal chain as the prefixes of a permutation of [n]."""

    n: int
    order: tuple[int, ...]

    def prefixes(self) -> tuple[int, ...]:
        out = [0]
        mask = 0
        for e in self.order:
            mask |= 1 << (e - 1)
            out.append(mask)
        return tuple(out)


def chain_stream(seed: int, worker: int = 0) -> np.random.Generator:
    """Deterministic per-worker random stream derived from one master seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(worker,))))


def sample_chain(n: int, rng: np.random.Generator) -> MaximalChain:
    """Uniform maximal chain via an explicit Fisher-Yates shuffle of [n]."""
    order = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        order[i], order[j] = order[j], order[i]
    return MaximalChain(n=n, order=tuple(order))


@dataclass(frozen=True)
class MonteCarloChainStats:
    trials: int
    mean_hits: float
    mean_weight: float
    var_hits: float
    var_weight: float


def _chunk_sums(fam: Family, seed: int, chunk_index: int, count: int) -> tuple[int, int, int, int]:
    rng = chain_stream(seed, chunk_index)
    membership = fam.membership
    weights = [binomial(fam.n, i) for i in range(fam.n + 1)]
    s_h = s_h2 = s_w = s_w2 = 0
    for _ in range(count):
        chain = sample_chain(fam.n, rng)
        hits = 0
        weight = 0
        for i, prefix in enumerate(chain.prefixes()):
            if membership[prefix]:
                hits += 1
                weight += weights[i]
        s_h += hits
        s_h2 += hits * hits
        s_w += weight
        s_w2 += weight * weight
    return s_h, s_h2, s_w, s_w2


def monte_carlo_chain_stats(
    fam: Family, trials: int, seed: int, workers: int = 1
) -> MonteCarloChainStats:
    """Empirical chain-hit and chain-weight means over ``trials`` samples.

    Trials are split into fixed-size chunks, each drawn from a stream derived
    from (seed, chunk index); the integer accumulators are combined in chunk
    order, so the result is byte-identical for any worker count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    chunks = []
    start = 0
    idx = 0
    while start < trials:
        count = min(MC_CHUNK, trials - start)
        chunks.append((idx, count))
        start += count
        idx += 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _chunk_sums(fam, seed, c[0], c[1]), chunks))
    else:
        results = [_chunk_sums(fam, seed, i, c) for i, c in chunks]
    s_h = sum(r[0] for r in results)
    s_h2 = sum(r[1] for r in results)
    s_w = sum(r[2] for r in results)
    s_w2 = sum(r[3] for r in results)
    mean_h = s_h / trials
    mean_w = s_w / trials
    if trials > 1:
        var_h = (s_h2 - s_h * s_h / trials) / (trials - 1)
        var_w = (s_w2 - s_w * s_w / trials) / (trials - 1)
    else:
        var_h = var_w = 0.0
    return MonteCarloChainStats(
        trials=trials, mean_hits=mean_h, mean_weight=mean_w, var_hits=var_h, var_weight=var_w
    )


def chain_maximal_elements(fam: Family) -> tuple[int, ...]:
    """Members A such that some maximal chain through A meets no member above A.

    Computed by a superset-lattice reachability sweep: a mask S can escape to
    the top while avoiding the family iff S is not a member and some cover
    S + e can escape (the full set escapes trivially).
    """
    n = fam.n
    size = 1 << n
    full = size - 1
    membership = fam.membership
    pc = popcount_table(n)
    escape = np.zeros(size, dtype=bool)
    escape[full] = not membership[full]
    by_card: list[list[int]] = [[] for _ in range(n + 1)]
    for mask in range(size):
        by_card[int(pc[mask])].append(mask)
    for card in range(n - 1, -1, -1):
        for mask in by_card[card]:
            if membership[mask]:
                continue
            rest = full ^ mask
            while rest:
                bit = rest & -rest
                if escape[mask | bit]:
                    escape[mask] = True
                    break
                rest ^= bit
    out = []
    for mask in fam.masks:
        mask = int(mask)
        if mask == full:
            out.append(mask)
            continue
        rest = full ^ mask
        ok = False
        while rest:
            bit = rest & -rest
            if escape[mask | bit]:
                ok = True
                break
            rest ^= bit
        if ok:
            out.append(mask)
    return tuple(out)


def chain_maximal_elements_bruteforce(fam: Family) -> tuple[int, ...]:
    """All-permutations oracle for :func:`chain_maximal_elements` (n <= 8)."""
    if fam.n > 8:
        raise ValueError("brute force over n! chains limited to n <= 8")
    found = set()
    membership = fam.membership
    for order in permutations(range(1, fam.n + 1)):
        top: Optional[int] = None
        mask = 0
        if membership[0]:
            top = 0
        for e in order:
            mask |= 1 << (e - 1)
            if membership[mask]:
                top = mask
        if top is not None:
            found.add(top)
    return tuple(sorted(found))


@dataclass(frozen=True)
class ChainLemmaReport:
    """Outcome of the chain bound check for a saw family without the empty set."""

    lym: Fraction
    bound_holds: bool
    equality: bool
    structure_checked: bool
    structure_ok: bool
    failures: tuple[str, ...]


def check_chain_lemma(fam: Family) -> ChainLemmaReport:
    """Verify the chain bound lym_sum <= 2 and, at equality, its rigidity.

    Preconditions (violations are rejected, they are not counterexamples):
    the family is saw (t = 1) and does not contain the empty set.  When the
    bound is attained exactly, every chain-maximal member A must have subset
    count |A| + 1 with every member strictly below A of size 1 or |A| - 1.
    """
    if 0 in fam:
        raise ValueError("chain bound requires a family without the empty set")
    violation = first_saw_violation(fam, 1)
    if violation is not None:
        raise ValueError(
            f"chain bound requires a saw family; witness {set_repr(violation.mask)} "
            f"has mu={violation.mu} > {violation.allowed}"
        )
    value = lym_sum(fam)
    holds = value <= 2
    equality = value == 2
    failures: list[str] = []
    structure_checked = False
    structure_ok = True
    if equality:
        structure_checked = True
        table = mu_all(fam)
        pc = popcount_table(fam.n)
        for a in chain_maximal_elements(fam):
            size_a = int(pc[a])
            if table[a] != size_a + 1:
                structure_ok = False
                failures.append(
                    f"chain-maximal {set_repr(a)} has mu={table[a]}, expected {size_a + 1}"
                )
            sub = (a - 1) & a
            while True:
                if fam.membership[sub]:
                    size_b = int(pc[sub])
                    if size_b not in (1, size_a - 1):
                        structure_ok = False
                        failures.append(
                            f"member {set_repr(sub)} below {set_repr(a)} has size {size_b}"
                        )
                if sub == 0:
                    break
                sub = (sub - 1) & a
    return ChainLemmaReport(
        lym=value,
        bound_holds=holds,
        equality=equality,
        structure_checked=structure_checked,
        structure_ok=structure_ok,
        failures=tuple(failures),
    )
