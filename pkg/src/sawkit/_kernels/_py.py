"""Pure-Python kernels: lattice transforms and the family-search core.

This module is the reference implementation.  ``_native.pyx`` is a
line-for-line port with C types; both must produce identical outputs,
including node counts, and the parity tests enforce that.
"""

from __future__ import annotations

import numpy as np

STATUS_PROVED = 0
STATUS_BUDGET_EXHAUSTED = 1


def zeta_subset_inplace(values: np.ndarray) -> None:
    """In place, replace values[A] by the sum of values[B] over all B <= A."""
    size = values.shape[0]
    n = size.bit_length() - 1
    step = 1
    for _ in range(n):
        v = values.reshape(-1, 2 * step)
        v[:, step:] += v[:, :step]
        step *= 2


def zeta_superset_inplace(values: np.ndarray) -> None:
    """In place, replace values[A] by the sum of values[B] over all B >= A."""
    size = values.shape[0]
    n = size.bit_length() - 1
    step = 1
    for _ in range(n):
        v = values.reshape(-1, 2 * step)
        v[:, :step] += v[:, step:]
        step *= 2


def mobius_subset_inplace(values: np.ndarray) -> None:
    """In place, invert :func:`zeta_subset_inplace`."""
    size = values.shape[0]
    n = size.bit_length() - 1
    step = 1
    for _ in range(n):
        v = values.reshape(-1, 2 * step)
        v[:, step:] -= v[:, :step]
        step *= 2


def run_search(
    n,
    t,
    masks,
    pc,
    thr,
    win,
    cost,
    knap_order,
    cap_units,
    cap_units_empty,
    partner,
    sym_perms,
    sym_depth,
    intersecting,
    use_bounds,
    all_optima,
    budget,
    init_best,
    hard_cap,
):
    """Depth-first maximum-family search over a fixed candidate order.

    Candidates are decided strictly in index order (include branch first),
    with incremental subset-count maintenance, optional admissible bounds,
    and optional lex-leader symmetry pruning on the decision prefix.

    Parameters mirror the precomputed tables built by ``sawkit.search``:

    - ``masks``: int64 array of candidate sets, canonical order.
    - ``pc``: uint8 popcount table over all 2^n masks.
    - ``thr``: per-cardinality subset-count budgets (t-saw thresholds).
    - ``win``: per-cardinality window bound on the total family size.
    - ``cost``/``knap_order``/``cap_units``/``cap_units_empty``: integerised
      fractional-knapsack data for the chain (LYM) capacity; ``cap_units < 0``
      disables the capacity bound.
    - ``partner``: per-candidate index of its complement (or -1).
    - ``sym_perms``: index permutations induced by the symmetric group, or
      None to disable symmetry pruning at depths <= ``sym_depth``.

    Returns ``(status, best, nodes, optima)`` where ``optima`` is a list of
    tuples of masks in inclusion order; sequential and deterministic.
    """
    masks_l = [int(x) for x in masks]
    pc_l = pc.tolist()
    thr_l = [int(x) for x in thr]
    win_l = [int(x) for x in win]
    cost_l = [int(x) for x in cost]
    order_l = [int(x) for x in knap_order]
    partner_l = [int(x) for x in partner]
    sym_rows = None if sym_perms is None else [row.tolist() for row in sym_perms]

    m = len(masks_l)
    full = (1 << n) - 1
    size_l = [pc_l[mk] for mk in masks_l]
    cap_enabled = cap_units >= 0
    pair_list = [(j, partner_l[j]) for j in range(m) if partner_l[j] > j]

    mu = [0] * (1 << n)
    chosen_flag = bytearray(1 << n)
    assigned = [-1] * m
    dead = [0] * m
    chosen = []
    layer_chosen = [0] * (n + 1)

    nodes = 0
    best = init_best
    status = STATUS_PROVED
    aborted = False
    lym_used = 0
    empty_chosen = 0
    best_list = []

    def dominated(i):
        # Prune if some group element provably maps this decision prefix to a
        # lexicographically greater one (include=1 beats exclude=0).
        for row in sym_rows:
            for j in range(i):
                sj = row[j]
                if sj >= i:
                    break
                c = assigned[sj]
                a = assigned[j]
                if c > a:
                    return True
                if c < a:
                    break
        return False

    def greedy(capacity, cnt):
        # Fractional knapsack, floored: layers in increasing cost order.
        if capacity <= 0:
            return 0
        k = 0
        for s in order_l:
            c = cnt[s]
            if c == 0:
                continue
            unit = cost_l[s]
            take = capacity // unit
            if take >= c:
                k += c
                capacity -= c * unit
            else:
                k += take
                break
        return k

    def bound(i):
        cnt = [0] * (n + 1)
        live_layer = [False] * (n + 1)
        empty_live = False
        for j in range(i, m):
            if dead[j]:
                continue
            s = size_l[j]
            if mu[masks_l[j]] >= thr_l[s]:
                continue
            live_layer[s] = True
            if cap_enabled and s == 0:
                empty_live = True
                continue
            cnt[s] += 1
        if intersecting:
            # An intersecting family holds at most one of each complementary
            # pair, so a both-live pair contributes a single knapsack item.
            for a, b in pair_list:
                if a >= i and dead[a] == 0 and dead[b] == 0:
                    if (
                        mu[masks_l[a]] < thr_l[size_l[a]]
                        and mu[masks_l[b]] < thr_l[size_l[b]]
                    ):
                        cnt[size_l[b]] -= 1
        if not cap_enabled:
            k_add = sum(cnt)
        else:
            if empty_chosen:
                k_add = greedy(cap_units_empty - lym_used, cnt)
            else:
                k_add = greedy(cap_units - lym_used, cnt)
                if empty_live:
                    alt = 1 + greedy(cap_units_empty - lym_used, cnt)
                    if alt > k_add:
                        k_add = alt
        b = len(chosen) + k_add
        wb = 0
        for s in range(n + 1):
            if live_layer[s] or layer_chosen[s]:
                if win_l[s] > wb:
                    wb = win_l[s]
        if wb < b:
            b = wb
        if hard_cap < b:
            b = hard_cap
        return b

    def feasible(i):
        if dead[i]:
            return False
        bmask = masks_l[i]
        if mu[bmask] >= thr_l[size_l[i]]:
            return False
        comp = full ^ bmask
        s = comp
        while True:
            sup = bmask | s
            if chosen_flag[sup] and mu[sup] >= thr_l[pc_l[sup]]:
                return False
            if s == 0:
                break
            s = (s - 1) & comp
        return True

    def apply(i):
        nonlocal lym_used, empty_chosen
        bmask = masks_l[i]
        comp = full ^ bmask
        s = comp
        while True:
            mu[bmask | s] += 1
            if s == 0:
                break
            s = (s - 1) & comp
        chosen_flag[bmask] = 1
        chosen.append(bmask)
        layer_chosen[size_l[i]] += 1
        if cap_enabled:
            if bmask == 0:
                empty_chosen += 1
            else:
                lym_used += cost_l[size_l[i]]
        if intersecting:
            for j in range(i + 1, m):
                if masks_l[j] & bmask == 0:
                    dead[j] += 1

    def undo(i):
        nonlocal lym_used, empty_chosen
        bmask = masks_l[i]
        comp = full ^ bmask
        s = comp
        while True:
            mu[bmask | s] -= 1
            if s == 0:
                break
            s = (s - 1) & comp
        chosen_flag[bmask] = 0
        chosen.pop()
        layer_chosen[size_l[i]] -= 1
        if cap_enabled:
            if bmask == 0:
                empty_chosen -= 1
            else:
                lym_used -= cost_l[size_l[i]]
        if intersecting:
            for j in range(i + 1, m):
                if masks_l[j] & bmask == 0:
                    dead[j] -= 1

    def decide(i):
        nonlocal nodes, best, status, aborted
        nodes += 1
        if budget > 0 and nodes > budget:
            status = STATUS_BUDGET_EXHAUSTED
            aborted = True
            return
        if sym_rows is not None and 1 <= i <= sym_depth and dominated(i):
            return
        if i == m:
            size = len(chosen)
            if size > best:
                best = size
                del best_list[:]
                best_list.append(tuple(chosen))
            elif size == best and all_optima:
                best_list.append(tuple(chosen))
            return
        if use_bounds and best >= 0:
            b = bound(i)
            if b < best or (b == best and not all_optima):
                return
        if feasible(i):
            apply(i)
            assigned[i] = 1
            decide(i + 1)
            undo(i)
            if aborted:
                assigned[i] = -1
                return
        assigned[i] = 0
        decide(i + 1)
        assigned[i] = -1

    decide(0)
    return status, best, nodes, best_list
