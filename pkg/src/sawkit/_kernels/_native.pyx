# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: same entry points and node-for-node behaviour as _py."""

import numpy as np

STATUS_PROVED = 0
STATUS_BUDGET_EXHAUSTED = 1


def zeta_subset_inplace(values):
    cdef long long[::1] v = values
    cdef Py_ssize_t size = v.shape[0]
    cdef Py_ssize_t step = 1, base, j
    while step < size:
        base = 0
        while base < size:
            for j in range(base + step, base + 2 * step):
                v[j] += v[j - step]
            base += 2 * step
        step *= 2


def zeta_superset_inplace(values):
    cdef long long[::1] v = values
    cdef Py_ssize_t size = v.shape[0]
    cdef Py_ssize_t step = 1, base, j
    while step < size:
        base = 0
        while base < size:
            for j in range(base + step, base + 2 * step):
                v[j - step] += v[j]
            base += 2 * step
        step *= 2


def mobius_subset_inplace(values):
    cdef long long[::1] v = values
    cdef Py_ssize_t size = v.shape[0]
    cdef Py_ssize_t step = 1, base, j
    while step < size:
        base = 0
        while base < size:
            for j in range(base + step, base + 2 * step):
                v[j] -= v[j - step]
            base += 2 * step
        step *= 2


cdef class _SearchCore:
    cdef const long long[::1] masks
    cdef const unsigned char[::1] pc
    cdef const long long[::1] thr
    cdef const long long[::1] win
    cdef const long long[::1] cost
    cdef const long long[::1] knap_order
    cdef const long long[::1] partner
    cdef const long long[::1] pair_a
    cdef const long long[::1] pair_b
    cdef const long long[:, ::1] sym_rows
    cdef long long[::1] mu
    cdef unsigned char[::1] chosen_flag
    cdef signed char[::1] assigned
    cdef long long[::1] dead
    cdef long long[::1] chosen
    cdef long long[::1] layer_chosen
    cdef long long[::1] size_l
    cdef long long[::1] cnt
    cdef unsigned char[::1] live_layer
    cdef int n, m, sym_depth, n_pairs, chosen_n, empty_chosen
    cdef long long full, budget, init_best, hard_cap
    cdef long long cap_units, cap_units_empty
    cdef bint intersecting, use_bounds, all_optima, cap_enabled, have_sym, aborted
    cdef long long nodes, best, lym_used
    cdef int status
    cdef list best_list

    def __init__(
        self,
        int n,
        masks,
        pc,
        thr,
        win,
        cost,
        knap_order,
        partner,
        sym_perms,
        int sym_depth,
        bint intersecting,
        bint use_bounds,
        bint all_optima,
        long long budget,
        long long init_best,
        long long hard_cap,
        long long cap_units,
        long long cap_units_empty,
    ):
        cdef int j
        self.n = n
        self.masks = np.ascontiguousarray(masks, dtype=np.int64)
        self.pc = np.ascontiguousarray(pc, dtype=np.uint8)
        self.thr = np.ascontiguousarray(thr, dtype=np.int64)
        self.win = np.ascontiguousarray(win, dtype=np.int64)
        self.cost = np.ascontiguousarray(cost, dtype=np.int64)
        self.knap_order = np.ascontiguousarray(knap_order, dtype=np.int64)
        self.partner = np.ascontiguousarray(partner, dtype=np.int64)
        self.m = self.masks.shape[0]
        self.full = (<long long> 1 << n) - 1
        self.sym_depth = sym_depth
        self.intersecting = intersecting
        self.use_bounds = use_bounds
        self.all_optima = all_optima
        self.budget = budget
        self.hard_cap = hard_cap
        self.cap_units = cap_units
        self.cap_units_empty = cap_units_empty
        self.cap_enabled = cap_units >= 0
        self.have_sym = sym_perms is not None
        if self.have_sym:
            self.sym_rows = np.ascontiguousarray(sym_perms, dtype=np.int64)
        else:
            self.sym_rows = np.zeros((1, 1), dtype=np.int64)
        size_l = np.zeros(self.m, dtype=np.int64)
        for j in range(self.m):
            size_l[j] = self.pc[self.masks[j]]
        self.size_l = size_l
        pair_a = []
        pair_b = []
        for j in range(self.m):
            if self.partner[j] > j:
                pair_a.append(j)
                pair_b.append(self.partner[j])
        self.pair_a = np.array(pair_a, dtype=np.int64) if pair_a else np.zeros(0, dtype=np.int64)
        self.pair_b = np.array(pair_b, dtype=np.int64) if pair_b else np.zeros(0, dtype=np.int64)
        self.n_pairs = self.pair_a.shape[0]
        self.mu = np.zeros((<long long> 1) << n, dtype=np.int64)
        self.chosen_flag = np.zeros((<long long> 1) << n, dtype=np.uint8)
        self.assigned = np.full(self.m, -1, dtype=np.int8)
        self.dead = np.zeros(self.m, dtype=np.int64)
        self.chosen = np.zeros(self.m, dtype=np.int64)
        self.layer_chosen = np.zeros(n + 1, dtype=np.int64)
        self.cnt = np.zeros(n + 1, dtype=np.int64)
        self.live_layer = np.zeros(n + 1, dtype=np.uint8)
        self.chosen_n = 0
        self.empty_chosen = 0
        self.nodes = 0
        self.best = init_best
        self.status = STATUS_PROVED
        self.aborted = False
        self.lym_used = 0
        self.best_list = []

    cdef bint dominated(self, int i):
        cdef int p, j
        cdef long long sj
        cdef signed char a, c
        for p in range(self.sym_rows.shape[0]):
            for j in range(i):
                sj = self.sym_rows[p, j]
                if sj >= i:
                    break
                c = self.assigned[sj]
                a = self.assigned[j]
                if c > a:
                    return True
                if c < a:
                    break
        return False

    cdef long long greedy(self, long long capacity):
        cdef long long k = 0, c, unit, take
        cdef int idx, s
        if capacity <= 0:
            return 0
        for idx in range(self.knap_order.shape[0]):
            s = <int> self.knap_order[idx]
            c = self.cnt[s]
            if c == 0:
                continue
            unit = self.cost[s]
            take = capacity // unit
            if take >= c:
                k += c
                capacity -= c * unit
            else:
                k += take
                break
        return k

    cdef long long bound(self, int i):
        cdef int j, s
        cdef long long a, b_idx, k_add, alt, b, wb
        cdef bint empty_live = False
        for s in range(self.n + 1):
            self.cnt[s] = 0
            self.live_layer[s] = 0
        for j in range(i, self.m):
            if self.dead[j]:
                continue
            s = <int> self.size_l[j]
            if self.mu[self.masks[j]] >= self.thr[s]:
                continue
            self.live_layer[s] = 1
            if self.cap_enabled and s == 0:
                empty_live = True
                continue
            self.cnt[s] += 1
        if self.intersecting:
            # at most one of each complementary pair fits an intersecting family
            for j in range(self.n_pairs):
                a = self.pair_a[j]
                b_idx = self.pair_b[j]
                if a >= i and self.dead[a] == 0 and self.dead[b_idx] == 0:
                    if (
                        self.mu[self.masks[a]] < self.thr[self.size_l[a]]
                        and self.mu[self.masks[b_idx]] < self.thr[self.size_l[b_idx]]
                    ):
                        self.cnt[self.size_l[b_idx]] -= 1
        if not self.cap_enabled:
            k_add = 0
            for s in range(self.n + 1):
                k_add += self.cnt[s]
        else:
            if self.empty_chosen:
                k_add = self.greedy(self.cap_units_empty - self.lym_used)
            else:
                k_add = self.greedy(self.cap_units - self.lym_used)
                if empty_live:
                    alt = 1 + self.greedy(self.cap_units_empty - self.lym_used)
                    if alt > k_add:
                        k_add = alt
        b = self.chosen_n + k_add
        wb = 0
        for s in range(self.n + 1):
            if self.live_layer[s] or self.layer_chosen[s]:
                if self.win[s] > wb:
                    wb = self.win[s]
        if wb < b:
            b = wb
        if self.hard_cap < b:
            b = self.hard_cap
        return b

    cdef bint feasible(self, int i):
        cdef long long bmask, comp, s, sup
        if self.dead[i]:
            return False
        bmask = self.masks[i]
        if self.mu[bmask] >= self.thr[self.size_l[i]]:
            return False
        comp = self.full ^ bmask
        s = comp
        while True:
            sup = bmask | s
            if self.chosen_flag[sup] and self.mu[sup] >= self.thr[self.pc[sup]]:
                return False
            if s == 0:
                break
            s = (s - 1) & comp
        return True

    cdef void apply(self, int i):
        cdef long long bmask, comp, s
        cdef int j
        bmask = self.masks[i]
        comp = self.full ^ bmask
        s = comp
        while True:
            self.mu[bmask | s] += 1
            if s == 0:
                break
            s = (s - 1) & comp
        self.chosen_flag[bmask] = 1
        self.chosen[self.chosen_n] = bmask
        self.chosen_n += 1
        self.layer_chosen[self.size_l[i]] += 1
        if self.cap_enabled:
            if bmask == 0:
                self.empty_chosen += 1
            else:
                self.lym_used += self.cost[self.size_l[i]]
        if self.intersecting:
            for j in range(i + 1, self.m):
                if self.masks[j] & bmask == 0:
                    self.dead[j] += 1

    cdef void undo(self, int i):
        cdef long long bmask, comp, s
        cdef int j
        bmask = self.masks[i]
        comp = self.full ^ bmask
        s = comp
        while True:
            self.mu[bmask | s] -= 1
            if s == 0:
                break
            s = (s - 1) & comp
        self.chosen_flag[bmask] = 0
        self.chosen_n -= 1
        self.layer_chosen[self.size_l[i]] -= 1
        if self.cap_enabled:
            if bmask == 0:
                self.empty_chosen -= 1
            else:
                self.lym_used -= self.cost[self.size_l[i]]
        if self.intersecting:
            for j in range(i + 1, self.m):
                if self.masks[j] & bmask == 0:
                    self.dead[j] -= 1

    cdef int decide(self, int i) except -1:
        cdef long long size, b
        cdef int k
        self.nodes += 1
        if self.budget > 0 and self.nodes > self.budget:
            self.status = STATUS_BUDGET_EXHAUSTED
            self.aborted = True
            return 0
        if self.have_sym and 1 <= i <= self.sym_depth and self.dominated(i):
            return 0
        if i == self.m:
            size = self.chosen_n
            if size > self.best:
                self.best = size
                del self.best_list[:]
                self.best_list.append(tuple([self.chosen[k] for k in range(self.chosen_n)]))
            elif size == self.best and self.all_optima:
                self.best_list.append(tuple([self.chosen[k] for k in range(self.chosen_n)]))
            return 0
        if self.use_bounds and self.best >= 0:
            b = self.bound(i)
            if b < self.best or (b == self.best and not self.all_optima):
                return 0
        if self.feasible(i):
            self.apply(i)
            self.assigned[i] = 1
            self.decide(i + 1)
            self.undo(i)
            if self.aborted:
                self.assigned[i] = -1
                return 0
        self.assigned[i] = 0
        self.decide(i + 1)
        self.assigned[i] = -1
        return 0

    def run(self):
        self.decide(0)
        return self.status, int(self.best), int(self.nodes), self.best_list


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
    """Compiled twin of ``_py.run_search``; see that docstring for contract."""
    core = _SearchCore(
        n,
        masks,
        pc,
        thr,
        win,
        cost,
        knap_order,
        partner,
        sym_perms,
        sym_depth,
        intersecting,
        use_bounds,
        all_optima,
        budget,
        init_best,
        hard_cap,
        cap_units,
        cap_units_empty,
    )
    return core.run()
