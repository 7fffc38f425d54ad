"""Programmatic verification suite.

Each check is one acceptance-grade statement about the toolkit, evaluated at
full stated scale with fixed seeds; the CLI ``verify`` command runs them and
prints one deterministic PASS/FAIL line per check (timings go to stderr so
reports stay byte-comparable).
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional, TextIO

from .chains import (
    chain_maximal_elements,
    chain_maximal_elements_bruteforce,
    check_chain_lemma,
    expected_weight,
    lym_sum,
    monte_carlo_chain_stats,
)
from .constructions import (
    conjectured_max_intersecting_saw,
    extremal_intersecting_saw_families_odd,
    extremal_t_saw_families,
    lightning,
    max_t_saw_size,
    middle_layers,
    odd_intersecting_extremal,
)
from .families import (
    Family,
    bubble_up,
    first_disjoint_pair,
    first_saw_violation,
    is_t_saw,
    mu_all,
    mu_single,
)
from .sampling import (
    random_bubble_move,
    random_family,
    random_intersecting_leaning_family,
    random_saw_family,
    stream,
)
from .search import (
    Mode,
    SearchProblem,
    SearchStatus,
    conjecture_probe,
    exhaustive_oracle,
    expand_orbits,
    search_max,
    verify_classification,
)
from .sunflowers import (
    OddSearchStatus,
    find_even_sunflower,
    find_even_sunflower_bruteforce,
    find_odd_sunflower,
    is_even_sunflower,
)
from .transforms import mobius_subset, mobius_subset_direct, zeta_subset

import numpy as np

SEED_WEIGHT = 1001
SEED_CHAIN = 1002
SEED_BUBBLE = 1003
SEED_EVEN = 1004
SEED_BRIDGE = 1005
SEED_KERNEL = 1006
PROBE_BUDGET = 3_000_000


@dataclass(frozen=True)
class CheckResult:
    key: str
    ok: bool
    detail: str


def _result(key: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(key=key, ok=ok, detail=detail)


def check_construction_formula() -> CheckResult:
    """Window constructions match the closed-form maximum and are t-saw
    (all n <= 20, 0 <= t <= n)."""
    cases = 0
    for n in range(1, 21):
        for t in range(0, n + 1):
            fam = middle_layers(n, t)
            if len(fam) != max_t_saw_size(n, t):
                return _result(
                    "construction-formula",
                    False,
                    f"size mismatch at n={n}, t={t}: {len(fam)} != {max_t_saw_size(n, t)}",
                )
            if not is_t_saw(fam, t):
                return _result(
                    "construction-formula", False, f"window at n={n}, t={t} is not {t}-saw"
                )
            cases += 1
    return _result("construction-formula", True, f"{cases} (n,t) cases, exact")


def check_small_classification() -> CheckResult:
    """Exhaustive classification of maximum t-saw families for all n <= 4."""
    expected_counts = {(4, 0): 1, (4, 1): 2, (4, 2): 1, (4, 3): 16, (4, 4): 1}
    cases = 0
    for n in range(1, 5):
        for t in range(0, n + 1):
            report = verify_classification(n, t)
            if not report.ok:
                return _result(
                    "small-classification",
                    False,
                    f"mismatch at n={n}, t={t}: optimum {report.optimum} "
                    f"(expected {report.expected_optimum}), "
                    f"{len(report.missing)} missing / {len(report.extra)} extra",
                )
            want = expected_counts.get((n, t))
            got = len(extremal_t_saw_families(n, t))
            if want is not None and got != want:
                return _result(
                    "small-classification", False, f"n={n}, t={t}: {got} optima, expected {want}"
                )
            cases += 1
    return _result("small-classification", True, f"{cases} (n,t) cases, optima sets exact")


def check_bb_symmetry_n5() -> CheckResult:
    """Branch-and-bound with symmetry pruning at n=5, t=1: optimum 20 with the
    two middle layers as the unique labeled optimum."""
    outcome = search_max(
        SearchProblem(n=5, t=1, symmetry=True, enumerate_all_optima=True)
    )
    if outcome.status is not SearchStatus.PROVED:
        return _result("bb-symmetry-n5", False, "search did not complete")
    if outcome.optimum != 20:
        return _result("bb-symmetry-n5", False, f"optimum {outcome.optimum} != 20")
    labeled = expand_orbits(5, outcome.optima)
    want = middle_layers(5, 1)
    if len(labeled) != 1 or labeled[0] != want:
        return _result(
            "bb-symmetry-n5", False, f"{len(labeled)} labeled optima, expected the middle window"
        )
    return _result(
        "bb-symmetry-n5", True, f"optimum 20, unique optimum, {outcome.nodes_explored} nodes"
    )


def check_intersecting_odd() -> CheckResult:
    """Maximum intersecting saw families on odd ground sets: n=3 has the four
    predicted optima, n=5 exactly one."""
    oracle = exhaustive_oracle(3, 1, require_intersecting=True)
    predicted3 = {fam.mask_set() for fam in extremal_intersecting_saw_families_odd(2)}
    got3 = {fam.mask_set() for fam in oracle.optima}
    if oracle.optimum != 4 or got3 != predicted3:
        return _result(
            "intersecting-odd", False, f"n=3: optimum {oracle.optimum}, {len(got3)} optima"
        )
    outcome = search_max(
        SearchProblem(n=5, t=1, require_intersecting=True, enumerate_all_optima=True)
    )
    if outcome.status is not SearchStatus.PROVED:
        return _result("intersecting-odd", False, "n=5 search did not complete")
    want = odd_intersecting_extremal(3)
    if outcome.optimum != 15 or len(outcome.optima) != 1 or outcome.optima[0] != want:
        return _result(
            "intersecting-odd",
            False,
            f"n=5: optimum {outcome.optimum}, {len(outcome.optima)} optima",
        )
    return _result(
        "intersecting-odd",
        True,
        f"n=3: 4 optima; n=5: unique optimum, {outcome.nodes_explored} nodes",
    )


def check_even_ground_k2() -> CheckResult:
    """Exhaustive verdict on [4]: the maximum intersecting saw family has the
    conjectured size 7 and the lightning family attains it."""
    oracle = exhaustive_oracle(4, 1, require_intersecting=True)
    want = conjectured_max_intersecting_saw(2)
    if oracle.optimum != 7 or want != 7:
        return _result("even-ground-k2", False, f"optimum {oracle.optimum}, formula {want}")
    if lightning(2).mask_set() not in {fam.mask_set() for fam in oracle.optima}:
        return _result("even-ground-k2", False, "lightning(2) is not among the optima")
    probe = conjecture_probe(2)
    if probe.verdict != "matched":
        return _result("even-ground-k2", False, f"probe verdict {probe.verdict}")
    return _result(
        "even-ground-k2", True, f"optimum 7 attained by lightning; {len(oracle.optima)} optima"
    )


def check_expected_weight(workers: int = 1) -> CheckResult:
    """Chain-weight identity: expected weight equals family size exactly on
    10^4 random families (n <= 12), plus a 3-sigma Monte Carlo cross-check."""
    trials = 10_000
    for i in range(trials):
        n = 1 + i % 12
        fam = random_family(n, stream(SEED_WEIGHT, i))
        if expected_weight(fam) != len(fam):
            return _result(
                "expected-weight", False, f"identity failed at case {i} (n={n}, size={len(fam)})"
            )
    mc_cases = [middle_layers(5, 1), lightning(2), middle_layers(6, 2)]
    for j, fam in enumerate(mc_cases):
        stats = monte_carlo_chain_stats(fam, trials=100_000, seed=SEED_WEIGHT + j, workers=workers)
        sigma_w = math.sqrt(max(stats.var_weight, 0.0) / stats.trials)
        sigma_h = math.sqrt(max(stats.var_hits, 0.0) / stats.trials)
        exact_hits = float(lym_sum(fam))
        if abs(stats.mean_weight - len(fam)) > 3 * sigma_w + 1e-12:
            return _result(
                "expected-weight",
                False,
                f"monte carlo weight off at case {j}: {stats.mean_weight} vs {len(fam)}",
            )
        if abs(stats.mean_hits - exact_hits) > 3 * sigma_h + 1e-12:
            return _result(
                "expected-weight",
                False,
                f"monte carlo hits off at case {j}: {stats.mean_hits} vs {exact_hits}",
            )
    return _result("expected-weight", True, f"{trials} exact identities; 3 sampled cross-checks")


def check_chain_bound_random() -> CheckResult:
    """Chain bound lym <= 2 on 10^4 random saw families without the empty
    set (n <= 10), plus the equality rigidity on the odd middle windows."""
    trials = 10_000
    for i in range(trials):
        n = 2 + i % 9
        fam = random_saw_family(n, stream(SEED_CHAIN, i), max_size=30)
        value = lym_sum(fam)
        if value > 2:
            return _result(
                "chain-bound", False, f"lym={value} > 2 at case {i} (n={n}, size={len(fam)})"
            )
    # k = 1 degenerates: the window is the full power set of [1], which
    # contains the empty set and so falls outside the lemma's hypotheses.
    try:
        check_chain_lemma(middle_layers(1, 1))
        return _result("chain-bound", False, "k=1 window was not rejected")
    except ValueError:
        pass
    for k in range(2, 7):
        fam = middle_layers(2 * k - 1, 1)
        report = check_chain_lemma(fam)
        if not (report.bound_holds and report.equality and report.structure_ok):
            return _result("chain-bound", False, f"equality structure failed at k={k}")
    return _result("chain-bound", True, f"{trials} random saw families; rigidity at 2 <= k <= 6")


def check_bubbling() -> CheckResult:
    """10^4 random applicable bubbling moves all preserve the saw property."""
    moves = 0
    attempts = 0
    i = 0
    while moves < 10_000:
        i += 1
        attempts += 1
        if attempts > 200_000:
            return _result("bubbling", False, f"generator starved after {moves} moves")
        n = 3 + i % 6
        rng = stream(SEED_BUBBLE, i)
        fam = random_saw_family(n, rng, max_size=14)
        move = random_bubble_move(fam, rng)
        if move is None:
            continue
        a, b, c = move
        moved = bubble_up(fam, a, b, c)
        if len(moved) != len(fam):
            return _result("bubbling", False, f"size changed at move {moves}")
        if not is_t_saw(moved, 1):
            return _result("bubbling", False, f"saw property lost at move {moves}")
        moves += 1
    return _result("bubbling", True, f"{moves} moves, zero failures")


def _max_even_free_bruteforce(n: int) -> int:
    """Largest family of non-empty sets on [n] with no even-sunflower
    subfamily, by direct enumeration.

    Freeness is inherited by subfamilies, so it is enough to find a free
    family of size s and show every family of size s+1 contains one.
    """
    universe = list(range(1, 1 << n))

    def is_free(members: tuple[int, ...]) -> bool:
        for size in range(1, len(members) + 1):
            for combo in combinations(members, size):
                if is_even_sunflower(combo):
                    return False
        return True

    best = 0
    for size in range(1, len(universe) + 1):
        if any(is_free(c) for c in combinations(universe, size)):
            best = size
        else:
            break
    return best


def check_even_sunflowers() -> CheckResult:
    """Even-sunflower machinery: the exhaustive maximum free-family size is n
    for n <= 4, and the GF(2) finder agrees with brute force on 10^3 random
    families."""
    for n in range(1, 5):
        got = _max_even_free_bruteforce(n)
        if got != n:
            return _result("even-sunflowers", False, f"max free size {got} != {n} at n={n}")
    agreements = 0
    for i in range(1_000):
        rng = stream(SEED_EVEN, i)
        n = 4 + i % 9
        size = int(rng.integers(0, 16))
        pool = [int(x) + 1 for x in rng.permutation((1 << n) - 1)[:size]]
        fam = Family(n, sorted(set(pool)))
        fast = find_even_sunflower(fam)
        slow = find_even_sunflower_bruteforce(fam)
        if (fast is None) != (slow is None):
            return _result("even-sunflowers", False, f"finder disagreement at case {i}")
        if fast is not None and not fast.verify():
            return _result("even-sunflowers", False, f"certificate failed at case {i}")
        agreements += 1
    return _result(
        "even-sunflowers", True, f"max free size = n for n <= 4; {agreements} finder agreements"
    )


def check_no_odd_sunflower_bridge() -> CheckResult:
    """Families with an exact no-odd-sunflower verdict are saw and
    intersecting (10^3 random families, |F| <= 15)."""
    none_exact = 0
    for i in range(1_000):
        rng = stream(SEED_BRIDGE, i)
        n = 3 + i % 8
        fam = random_intersecting_leaning_family(n, rng, max_size=15)
        result = find_odd_sunflower(fam)
        if result.status is OddSearchStatus.FOUND:
            if not result.certificate.verify():
                return _result("odd-sunflower-bridge", False, f"bad certificate at case {i}")
            continue
        if result.status is OddSearchStatus.UNKNOWN:
            return _result("odd-sunflower-bridge", False, f"budget exhausted at case {i}")
        none_exact += 1
        if not is_t_saw(fam, 1):
            return _result(
                "odd-sunflower-bridge", False, f"odd-sunflower-free family not saw at case {i}"
            )
        if first_disjoint_pair(fam) is not None:
            return _result(
                "odd-sunflower-bridge",
                False,
                f"odd-sunflower-free family not intersecting at case {i}",
            )
    if none_exact < 50:
        return _result(
            "odd-sunflower-bridge", False, f"only {none_exact} exact-negative cases; generator too weak"
        )
    return _result("odd-sunflower-bridge", True, f"{none_exact} exact-negative cases verified")


def check_kernel_oracles() -> CheckResult:
    """Dual-route agreement: batch mu against submask enumeration, transform
    round-trips, chain-maximal members against the factorial oracle, and
    branch-and-bound against the exhaustive oracle."""
    for n in range(1, 13):
        rng = stream(SEED_KERNEL, n)
        fam = random_family(n, rng)
        table = mu_all(fam)
        for mask in range(1 << n):
            if table[mask] != mu_single(fam, mask):
                return _result("kernel-oracles", False, f"mu mismatch at n={n}, mask={mask}")
        vec = np.asarray(rng.integers(-50, 50, size=1 << n), dtype=np.int64)
        if not np.array_equal(mobius_subset(zeta_subset(vec)), vec):
            return _result("kernel-oracles", False, f"transform round-trip failed at n={n}")
        if n <= 6 and not np.array_equal(mobius_subset_direct(vec), mobius_subset(vec)):
            return _result("kernel-oracles", False, f"inverse-transform oracle failed at n={n}")
    for n in range(2, 9):
        for j in range(3 if n < 8 else 2):
            fam = random_family(n, stream(SEED_KERNEL, 100 + 10 * n + j))
            if chain_maximal_elements(fam) != chain_maximal_elements_bruteforce(fam):
                return _result("kernel-oracles", False, f"chain-maximal mismatch at n={n}")
    for n in range(1, 5):
        for t in range(0, n + 1):
            for intersecting in (False, True):
                oracle = exhaustive_oracle(n, t, require_intersecting=intersecting)
                bb = search_max(
                    SearchProblem(
                        n=n,
                        t=t,
                        require_intersecting=intersecting,
                        enumerate_all_optima=True,
                    )
                )
                if bb.optimum != oracle.optimum:
                    return _result(
                        "kernel-oracles",
                        False,
                        f"optimum mismatch at n={n}, t={t}, intersecting={intersecting}",
                    )
                if {f.mask_set() for f in bb.optima} != {f.mask_set() for f in oracle.optima}:
                    return _result(
                        "kernel-oracles",
                        False,
                        f"optima mismatch at n={n}, t={t}, intersecting={intersecting}",
                    )
    return _result("kernel-oracles", True, "mu, transforms, chain-maximal and search all agree")


def check_even_ground_k3_probe() -> CheckResult:
    """Budgeted probe of the conjectured maximum on [6]; an honest
    budget-exhausted outcome passes, a counterexample fails loudly."""
    probe = conjecture_probe(3, budget=PROBE_BUDGET)
    if probe.verdict == "matched":
        return _result(
            "even-ground-k3-probe",
            True,
            f"proved optimum {probe.outcome.optimum} = conjectured 26 "
            f"({probe.outcome.nodes_explored} nodes)",
        )
    if probe.verdict == "unresolved":
        return _result(
            "even-ground-k3-probe",
            True,
            f"budget exhausted honestly; incumbent {len(probe.incumbent)} "
            f"(conjectured {probe.conjectured}, bound {probe.upper_bound})",
        )
    return _result(
        "even-ground-k3-probe",
        False,
        f"verdict {probe.verdict}: optimum {probe.outcome.optimum} vs conjectured 26",
    )


QUICK_CHECKS: list[Callable[[], CheckResult]] = [
    check_construction_formula,
    check_small_classification,
    check_bb_symmetry_n5,
    check_intersecting_odd,
    check_even_ground_k2,
    check_expected_weight,
    check_chain_bound_random,
    check_bubbling,
    check_even_sunflowers,
    check_no_odd_sunflower_bridge,
    check_kernel_oracles,
]

FULL_CHECKS: list[Callable[[], CheckResult]] = QUICK_CHECKS + [check_even_ground_k3_probe]


def run_verification(
    level: str = "quick",
    workers: int = 1,
    out: Optional[TextIO] = None,
    err: Optional[TextIO] = None,
) -> int:
    """Run the suite; print one deterministic line per check to ``out`` and
    timing metadata to ``err``.  Returns 0 when everything passes."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    checks = FULL_CHECKS if level == "full" else QUICK_CHECKS
    failures = 0
    for check in checks:
        started = time.perf_counter()
        if check is check_expected_weight:
            result = check_expected_weight(workers=workers)
        else:
            result = check()
        elapsed = time.perf_counter() - started
        print(f"{'PASS' if result.ok else 'FAIL'} {result.key}: {result.detail}", file=out)
        print(f"# {result.key}: {elapsed:.2f}s", file=err)
        if not result.ok:
            failures += 1
    print(f"{'OK' if failures == 0 else 'FAILED'} ({len(checks)} checks, {failures} failures)", file=out)
    return 0 if failures == 0 else 1
