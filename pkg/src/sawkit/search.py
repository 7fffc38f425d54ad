"""Maximum-family search under t-saw (and optionally intersecting) constraints.

Two routes are kept deliberately separate:

- :func:`search_max` drives the kernel's depth-first engine (exhaustive or
  branch-and-bound with admissible bounds and optional symmetry pruning);
- :func:`exhaustive_oracle` is an independent pure-Python enumerator with
  naive feasibility checks, used to validate the engine's pruning.

The bounds used by branch-and-bound are all proved facts about the final
family, so pruning can never remove an optimal one: per-layer capacity, the
layer-window bound on the total size, and (for t <= 1, via an integerised
fractional knapsack) the chain bound on the LYM sum, with an adjusted
capacity when the empty set is part of the family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from ._kernels import STATUS_BUDGET_EXHAUSTED
from .constructions import (
    conjectured_max_intersecting_saw,
    extremal_t_saw_families,
    intersecting_saw_even_upper_bound,
    lightning,
    max_t_saw_size,
)
from .families import Family, first_disjoint_pair, first_saw_violation, saw_threshold
from .transforms import binomial, popcount_table

MAX_CANDIDATES = 2048
MAX_SYMMETRY_N = 7
KNAPSACK_UNIT_LIMIT = 1 << 60
DEFAULT_PROBE_BUDGET = 20_000_000


class Mode(Enum):
    EXHAUSTIVE = "exhaustive"
    BRANCH_AND_BOUND = "branch_and_bound"


class SearchStatus(Enum):
    PROVED = "proved"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SearchProblem:
    n: int
    t: int
    require_intersecting: bool = False
    layer_window: Optional[tuple[int, int]] = None
    mode: Mode = Mode.BRANCH_AND_BOUND
    symmetry: bool = False
    budget: Optional[int] = None
    enumerate_all_optima: bool = False
    sym_depth: int = 3


@dataclass(frozen=True)
class SearchOutcome:
    optimum: int
    optima: tuple[Family, ...]
    orbit_sizes: Optional[tuple[int, ...]]
    nodes_explored: int
    status: SearchStatus

    @property
    def proved(self) -> bool:
        return self.status is SearchStatus.PROVED


def _validate(problem: SearchProblem) -> None:
    if problem.t < 0 or problem.t > problem.n:
        raise ValueError(f"need 0 <= t <= n, got t={problem.t}, n={problem.n}")
    if problem.layer_window is not None:
        lo, hi = problem.layer_window
        if not 0 <= lo <= hi <= problem.n:
            raise ValueError(f"layer window {problem.layer_window} invalid for n={problem.n}")
    if problem.mode is Mode.EXHAUSTIVE:
        limit = 5 if problem.require_intersecting else 4
        if problem.n > limit:
            raise ValueError(
                f"exhaustive mode refuses n={problem.n} "
                f"(limit {limit}{' with intersecting' if problem.require_intersecting else ''})"
            )
    if problem.symmetry and problem.n > MAX_SYMMETRY_N:
        raise ValueError(f"symmetry pruning limited to n <= {MAX_SYMMETRY_N}")


def candidate_universe(
    n: int, intersecting: bool, layer_window: Optional[tuple[int, int]]
) -> list[int]:
    """Allowed sets in canonical branching order: weight C(n,|A|) descending,
    mask ascending within a weight class."""
    lo, hi = layer_window if layer_window is not None else (0, n)
    pc = popcount_table(n)
    masks = [
        mask
        for mask in range(1 << n)
        if lo <= pc[mask] <= hi and not (intersecting and mask == 0)
    ]
    masks.sort(key=lambda mask: (-binomial(n, int(pc[mask])), mask))
    return masks


def _bound_tables(n: int, t: int) -> dict:
    thr = np.array([saw_threshold(s, t) for s in range(n + 1)], dtype=np.int64)
    win = np.array(
        [
            sum(binomial(n, j) for j in range(max(0, s - t), s + 1))
            for s in range(n + 1)
        ],
        dtype=np.int64,
    )
    cost = np.zeros(n + 1, dtype=np.int64)
    knap_order = np.zeros(0, dtype=np.int64)
    cap_units = -1
    cap_units_empty = -1
    if t <= 1:
        lcm = 1
        for i in range(n + 1):
            lcm = math.lcm(lcm, binomial(n, i))
        if lcm <= KNAPSACK_UNIT_LIMIT:
            for s in range(n + 1):
                cost[s] = lcm // binomial(n, s)
            order = sorted(range(1, n + 1), key=lambda s: (int(cost[s]), s))
            knap_order = np.array(order, dtype=np.int64)
            if t == 0:
                cap_units = lcm  # antichain: LYM sum at most 1
                cap_units_empty = 0  # an antichain with {} is just {{}}
            else:
                cap_units = 2 * lcm  # saw family without {}: chain bound 2
                cap_units_empty = 2 * lcm - lcm // n  # residue is saw with budget |A|
    return {
        "thr": thr,
        "win": win,
        "cost": cost,
        "knap_order": knap_order,
        "cap_units": cap_units,
        "cap_units_empty": cap_units_empty,
    }


def _partner_indices(n: int, masks: Sequence[int], intersecting: bool) -> np.ndarray:
    partner = np.full(len(masks), -1, dtype=np.int64)
    if intersecting:
        position = {mask: i for i, mask in enumerate(masks)}
        full = (1 << n) - 1
        for i, mask in enumerate(masks):
            partner[i] = position.get(full ^ mask, -1)
    return partner


def apply_permutation(perm: Sequence[int], mask: int) -> int:
    """Image of a mask under a permutation given as a 0-based tuple."""
    out = 0
    b = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[b]
        mask >>= 1
        b += 1
    return out


def _symmetry_index_perms(n: int, masks: Sequence[int]) -> np.ndarray:
    position = {mask: i for i, mask in enumerate(masks)}
    rows = []
    for perm in permutations(range(n)):
        rows.append([position[apply_permutation(perm, mask)] for mask in masks])
    return np.array(rows, dtype=np.int64)


def _orbit_index_tuples(n: int, fam_masks: Sequence[int]) -> set[tuple[int, ...]]:
    orbit = set()
    for perm in permutations(range(n)):
        orbit.add(tuple(sorted(apply_permutation(perm, m) for m in fam_masks)))
    return orbit


def _reverify(n: int, t: int, intersecting: bool, fam: Family) -> None:
    violation = first_saw_violation(fam, t)
    if violation is not None:
        raise RuntimeError(f"search returned a non-t-saw family: {violation}")
    if intersecting:
        pair = first_disjoint_pair(fam)
        if pair is not None:
            raise RuntimeError(f"search returned a non-intersecting family: {pair}")


def _run_kernel(
    problem: SearchProblem,
    *,
    init_best: int = -1,
    hard_cap: Optional[int] = None,
    kernel=None,
) -> tuple[int, int, int, list[tuple[int, ...]]]:
    _validate(problem)
    n = problem.n
    masks = candidate_universe(n, problem.require_intersecting, problem.layer_window)
    if len(masks) > MAX_CANDIDATES:
        raise ValueError(
            f"candidate universe of {len(masks)} sets exceeds the search guard "
            f"({MAX_CANDIDATES}); restrict the layer window"
        )
    tables = _bound_tables(n, problem.t)
    sym_perms = _symmetry_index_perms(n, masks) if problem.symmetry else None
    partner = _partner_indices(n, masks, problem.require_intersecting)
    impl = kernel if kernel is not None else _kernels
    return impl.run_search(
        n,
        problem.t,
        np.array(masks, dtype=np.int64),
        popcount_table(n),
        tables["thr"],
        tables["win"],
        tables["cost"],
        tables["knap_order"],
        tables["cap_units"],
        tables["cap_units_empty"],
        partner,
        sym_perms,
        problem.sym_depth,
        problem.require_intersecting,
        problem.mode is Mode.BRANCH_AND_BOUND,
        problem.enumerate_all_optima,
        problem.budget if problem.budget is not None else 0,
        init_best,
        hard_cap if hard_cap is not None else (1 << 62),
    )


def search_max(
    problem: SearchProblem,
    *,
    _init_best: int = -1,
    _hard_cap: Optional[int] = None,
    _kernel=None,
) -> SearchOutcome:
    """Maximum family size under the problem constraints, with witnesses.

    With ``enumerate_all_optima`` the returned list is complete: fully
    labeled normally, orbit representatives (plus orbit sizes) when symmetry
    pruning is on.  Every returned family is re-verified against the plain
    predicates before the outcome is handed back.
    """
    status, best, nodes, optima_masks = _run_kernel(
        problem, init_best=_init_best, hard_cap=_hard_cap, kernel=_kernel
    )
    if best < 0:
        best = 0
        optima_masks = []
    families = [Family(problem.n, sorted(masks)) for masks in optima_masks]
    for fam in families:
        _reverify(problem.n, problem.t, problem.require_intersecting, fam)
    orbit_sizes: Optional[tuple[int, ...]] = None
    if problem.symmetry:
        # Canonicity lives in candidate-index space: the engine's prefix test
        # keeps exactly the families whose sorted index tuple is orbit-least.
        order = candidate_universe(problem.n, problem.require_intersecting, problem.layer_window)
        position = {mask: i for i, mask in enumerate(order)}
        perms = list(permutations(range(problem.n)))
        reps: list[Family] = []
        sizes: list[int] = []
        kept: set[tuple[int, ...]] = set()
        for fam in families:
            fam_masks = [int(m) for m in fam.masks]
            key = tuple(sorted(position[m] for m in fam_masks))
            orbit = {
                tuple(sorted(position[apply_permutation(p, m)] for m in fam_masks))
                for p in perms
            }
            if problem.enumerate_all_optima and key != min(orbit):
                continue  # its orbit-least image is collected separately
            if key in kept:
                continue
            kept.add(key)
            reps.append(fam)
            sizes.append(len(orbit))
        families = reps
        orbit_sizes = tuple(sizes)
    outcome_status = (
        SearchStatus.BUDGET_EXHAUSTED if status == STATUS_BUDGET_EXHAUSTED else SearchStatus.PROVED
    )
    return SearchOutcome(
        optimum=best,
        optima=tuple(families),
        orbit_sizes=orbit_sizes,
        nodes_explored=nodes,
        status=outcome_status,
    )


def expand_orbits(n: int, families: Sequence[Family]) -> list[Family]:
    """All labeled images of the given families under the symmetric group."""
    seen: set[tuple[int, ...]] = set()
    out: list[Family] = []
    for fam in families:
        masks = [int(m) for m in fam.masks]
        for key in sorted(_orbit_index_tuples(n, masks)):
            if key not in seen:
                seen.add(key)
                out.append(Family(n, key))
    return out


def exhaustive_oracle(
    n: int, t: int, require_intersecting: bool = False, *, _force_reduction: bool = False
) -> SearchOutcome:
    """Complete enumeration with naive feasibility checks and no bounds.

    The independent verdict used to validate branch-and-bound pruning.
    Supported at n <= 4, plus n = 5 in the intersecting case, where the
    first included set (in ascending mask order) is restricted to one
    canonical representative per cardinality orbit and the optima are
    expanded back through the symmetric group afterwards; every family has
    an image whose minimum mask is one of these prefix-sets, so the
    reduction is lossless (``_force_reduction`` turns it on at small n so
    tests can compare both routes).
    """
    if t < 0 or t > n:
        raise ValueError(f"need 0 <= t <= n, got t={t}, n={n}")
    reduce_first = _force_reduction
    if n > 4:
        if n == 5 and require_intersecting:
            reduce_first = True
        else:
            raise ValueError("exhaustive oracle limited to n <= 4 (n <= 5 intersecting)")
    universe = [m for m in range(1 << n) if not (require_intersecting and m == 0)]
    thr = [saw_threshold(s, t) for s in range(n + 1)]
    prefix_masks = {(1 << s) - 1 for s in range(1, n + 1)}

    chosen: list[int] = []
    best = -1
    best_list: list[tuple[int, ...]] = []
    nodes = 0

    def can_add(b: int) -> bool:
        if require_intersecting:
            for c in chosen:
                if b & c == 0:
                    return False
        trial = chosen + [b]
        for a in trial:
            mu = 0
            for c in trial:
                if c & ~a == 0:
                    mu += 1
            if mu > thr[bin(a).count("1")]:
                return False
        return True

    def walk(i: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if i == len(universe):
            size = len(chosen)
            if size > best:
                best = size
                best_list.clear()
                best_list.append(tuple(chosen))
            elif size == best:
                best_list.append(tuple(chosen))
            return
        b = universe[i]
        allowed_first = not (reduce_first and not chosen and b not in prefix_masks)
        if allowed_first and can_add(b):
            chosen.append(b)
            walk(i + 1)
            chosen.pop()
        walk(i + 1)

    walk(0)
    families = [Family(n, sorted(masks)) for masks in best_list]
    if reduce_first:
        families = expand_orbits(n, families)
    for fam in families:
        _reverify(n, t, require_intersecting, fam)
    return SearchOutcome(
        optimum=max(best, 0),
        optima=tuple(families),
        orbit_sizes=None,
        nodes_explored=nodes,
        status=SearchStatus.PROVED,
    )


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    t: int
    optimum: int
    expected_optimum: int
    matches: bool
    missing: tuple[Family, ...]
    extra: tuple[Family, ...]
    nodes_explored: int

    @property
    def ok(self) -> bool:
        return self.matches and self.optimum == self.expected_optimum


def verify_classification(n: int, t: int) -> ClassificationReport:
    """Compare the computed set of maximum t-saw families on [n] against the
    predicted classification (exact symmetric difference on mismatch)."""
    predicted = {fam.mask_set(): fam for fam in extremal_t_saw_families(n, t)}
    if n <= 4:
        outcome = exhaustive_oracle(n, t)
        found_families = list(outcome.optima)
    else:
        outcome = search_max(
            SearchProblem(
                n=n,
                t=t,
                mode=Mode.BRANCH_AND_BOUND,
                symmetry=True,
                enumerate_all_optima=True,
            )
        )
        if outcome.status is not SearchStatus.PROVED:
            raise RuntimeError("classification search did not complete")
        found_families = expand_orbits(n, outcome.optima)
    found = {fam.mask_set(): fam for fam in found_families}
    missing = tuple(predicted[k] for k in sorted(predicted.keys() - found.keys(), key=sorted))
    extra = tuple(found[k] for k in sorted(found.keys() - predicted.keys(), key=sorted))
    return ClassificationReport(
        n=n,
        t=t,
        optimum=outcome.optimum,
        expected_optimum=max_t_saw_size(n, t),
        matches=not missing and not extra,
        missing=missing,
        extra=extra,
        nodes_explored=outcome.nodes_explored,
    )


@dataclass(frozen=True)
class ProbeReport:
    """Outcome of probing the even-ground-set intersecting maximum at one k."""

    k: int
    conjectured: int
    upper_bound: Fraction
    outcome: SearchOutcome
    verdict: str  # "matched", "exceeded" or "unresolved"
    incumbent: Family


def conjecture_probe(k: int, budget: int = DEFAULT_PROBE_BUDGET) -> ProbeReport:
    """Branch-and-bound probe of the conjectured maximum intersecting saw
    family size on [2k], seeded with the lightning family as incumbent and
    hard-capped by the proved chain-argument upper bound."""
    if k < 2:
        raise ValueError("probe needs k >= 2")
    seed = lightning(k)
    conjectured = conjectured_max_intersecting_saw(k)
    assert len(seed) == conjectured
    bound = intersecting_saw_even_upper_bound(k)
    problem = SearchProblem(
        n=2 * k,
        t=1,
        require_intersecting=True,
        mode=Mode.BRANCH_AND_BOUND,
        budget=budget,
    )
    outcome = search_max(problem, _init_best=len(seed), _hard_cap=int(bound))
    incumbent = outcome.optima[0] if outcome.optima else seed
    if outcome.status is SearchStatus.PROVED:
        verdict = "matched" if outcome.optimum == conjectured else "exceeded"
    else:
        verdict = "unresolved"
    return ProbeReport(
        k=k,
        conjectured=conjectured,
        upper_bound=bound,
        outcome=outcome,
        verdict=verdict,
        incumbent=incumbent,
    )
