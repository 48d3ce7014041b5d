"""Numba-compiled twins of the kernels in ``_numpy.py``.

Same inputs, same outputs, loop-level implementations. Kept free of RNG so
backend choice can never change results: all randomness is drawn by callers
and passed in as arrays.
"""

import numpy as np
from numba import njit

UNREACHED = np.int32(1) << 30
_INF32 = np.int32(1) << 30


@njit(cache=True)
def _hops_from_sources(indptr, indices, n, sources):
    ns = sources.shape[0]
    dist = np.full((ns, n), _INF32, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    for row in range(ns):
        s = sources[row]
        dist[row, s] = 0
        queue[0] = np.int32(s)
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[row, u]
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if dist[row, v] == _INF32:
                    dist[row, v] = du + 1
                    queue[tail] = v
                    tail += 1
    return dist


def hops_from_sources(indptr, indices, n, sources):
    return _hops_from_sources(indptr, indices, n, np.asarray(sources, dtype=np.int64))


@njit(cache=True)
def _population_total_hops(D, gateway_sets):
    P, m = gateway_sets.shape
    n = D.shape[0]
    totals = np.zeros(P, dtype=np.int64)
    for p in range(P):
        total = np.int64(0)
        for i in range(n):
            best = _INF32
            for q in range(m):
                d = D[i, gateway_sets[p, q]]
                if d < best:
                    best = d
            total += best
        totals[p] = total
    return totals


def population_total_hops(D, gateway_sets):
    return _population_total_hops(D, np.asarray(gateway_sets, dtype=np.int64))


@njit(cache=True)
def _lloyd(xy, centroids0, max_iter):
    n = xy.shape[0]
    m = centroids0.shape[0]
    cent = centroids0.copy()
    labels = np.full(n, -1, dtype=np.int32)
    new_labels = np.empty(n, dtype=np.int32)
    own = np.empty(n, dtype=np.float64)
    counts = np.empty(m, dtype=np.int64)
    sx = np.empty(m, dtype=np.float64)
    sy = np.empty(m, dtype=np.float64)
    it = 0
    for it in range(1, max_iter + 1):
        for c in range(m):
            counts[c] = 0
            sx[c] = 0.0
            sy[c] = 0.0
        for i in range(n):
            best = np.inf
            arg = 0
            for c in range(m):
                dx = xy[i, 0] - cent[c, 0]
                dy = xy[i, 1] - cent[c, 1]
                d2 = dx * dx + dy * dy
                if d2 < best:
                    best = d2
                    arg = c
            new_labels[i] = arg
            own[i] = best
        any_empty = False
        stable = True
        for i in range(n):
            counts[new_labels[i]] += 1
            if new_labels[i] != labels[i]:
                stable = False
        for c in range(m):
            if counts[c] == 0:
                any_empty = True
        if not any_empty and stable:
            break
        for i in range(n):
            labels[i] = new_labels[i]
            sx[labels[i]] += xy[i, 0]
            sy[labels[i]] += xy[i, 1]
        for c in range(m):
            if counts[c] > 0:
                cent[c, 0] = sx[c] / counts[c]
                cent[c, 1] = sy[c] / counts[c]
        if any_empty:
            for c in range(m):
                if counts[c] == 0:
                    far = 0
                    fd = -np.inf
                    for i in range(n):
                        if own[i] > fd:
                            fd = own[i]
                            far = i
                    cent[c, 0] = xy[far, 0]
                    cent[c, 1] = xy[far, 1]
                    own[far] = -1.0
    return cent, labels, it


def lloyd(xy, centroids0, max_iter):
    return _lloyd(np.asarray(xy, dtype=np.float64), np.asarray(centroids0, dtype=np.float64), max_iter)


@njit(cache=True)
def _pam(xy, medoids0, max_iter):
    n = xy.shape[0]
    med = medoids0.copy()
    m = med.shape[0]
    labels = np.zeros(n, dtype=np.int32)
    new_med = np.empty(m, dtype=np.int32)
    it = 0
    for it in range(1, max_iter + 1):
        for i in range(n):
            best = np.inf
            arg = 0
            for c in range(m):
                dx = xy[i, 0] - xy[med[c], 0]
                dy = xy[i, 1] - xy[med[c], 1]
                d2 = dx * dx + dy * dy
                if d2 < best:
                    best = d2
                    arg = c
            labels[i] = arg
        for c in range(m):
            new_med[c] = med[c]
            best_cost = np.inf
            best_j = -1
            for j in range(n):
                if labels[j] != c:
                    continue
                cost = 0.0
                for k in range(n):
                    if labels[k] != c:
                        continue
                    dx = xy[j, 0] - xy[k, 0]
                    dy = xy[j, 1] - xy[k, 1]
                    cost += dx * dx + dy * dy
                if cost < best_cost:
                    best_cost = cost
                    best_j = j
            if best_j >= 0:
                new_med[c] = best_j
        stable = True
        for c in range(m):
            if new_med[c] != med[c]:
                stable = False
            med[c] = new_med[c]
        if stable:
            break
    return med, labels, it


def pam(xy, medoids0, max_iter):
    return _pam(np.asarray(xy, dtype=np.float64), np.asarray(medoids0, dtype=np.int32), max_iter)


@njit(cache=True)
def _ga_generation(D, population, parent_idx, cuts, mutation_mask, repair_keys, m):
    P, N = population.shape
    children = np.empty((P, N), dtype=np.uint8)
    for p in range(P):
        src = parent_idx[p]
        for j in range(N):
            children[p, j] = population[src, j]
    npairs = P // 2
    for pair in range(npairs):
        a = 2 * pair
        b = a + 1
        cut = cuts[pair]
        for j in range(cut, N):
            tmp = children[a, j]
            children[a, j] = children[b, j]
            children[b, j] = tmp
    totals = np.zeros(P, dtype=np.int64)
    repaired = np.zeros((P, N), dtype=np.uint8)
    ones = np.empty(m, dtype=np.int64)
    score = np.empty(N, dtype=np.float64)
    for p in range(P):
        for j in range(N):
            bit = children[p, j] ^ mutation_mask[p, j]
            score[j] = repair_keys[p, j] - bit
        # m smallest scores by repeated scan (m is small; keys are distinct)
        for q in range(m):
            arg = -1
            low = np.inf
            for j in range(N):
                if score[j] < low:
                    low = score[j]
                    arg = j
            ones[q] = arg
            score[arg] = np.inf
            repaired[p, arg] = 1
        n = D.shape[0]
        total = np.int64(0)
        for i in range(n):
            best = _INF32
            for q in range(m):
                d = D[i, ones[q]]
                if d < best:
                    best = d
            total += best
        totals[p] = total
    return repaired, totals


def ga_generation(D, population, parent_idx, cuts, mutation_mask, repair_keys, m):
    return _ga_generation(
        D,
        population,
        np.asarray(parent_idx, dtype=np.int64),
        np.asarray(cuts, dtype=np.int64),
        mutation_mask,
        repair_keys,
        m,
    )


@njit(cache=True)
def _bnb_pmedian(D, m, budget):
    n = D.shape[0]
    suffmin = np.empty((n, n + 1), dtype=np.int32)
    for i in range(n):
        suffmin[i, n] = _INF32
        for j in range(n - 1, -1, -1):
            a = suffmin[i, j + 1]
            b = D[i, j]
            suffmin[i, j] = a if a < b else b
    best_cost = np.int64(1) << 62
    best_set = np.full(m, -1, dtype=np.int32)
    choice = np.full(m, -1, dtype=np.int32)
    dstack = np.full((m + 1, n), _INF32, dtype=np.int32)
    jptr = np.zeros(m, dtype=np.int64)
    expanded = np.int64(0)
    pruned = np.int64(0)
    k = 0
    certified = True
    while k >= 0:
        j = jptr[k]
        if j > n - (m - k):
            k -= 1
            continue
        jptr[k] += 1
        expanded += 1
        if expanded > budget:
            certified = False
            expanded -= 1
            break
        if k == m - 1:
            cost = np.int64(0)
            for i in range(n):
                di = dstack[k, i]
                dj = D[i, j]
                cost += di if di < dj else dj
            if cost < best_cost:
                best_cost = cost
                for q in range(m - 1):
                    best_set[q] = choice[q]
                best_set[m - 1] = np.int32(j)
        else:
            bound = np.int64(0)
            for i in range(n):
                di = dstack[k, i]
                dj = D[i, j]
                dn = di if di < dj else dj
                dstack[k + 1, i] = dn
                sm = suffmin[i, j + 1]
                bound += dn if dn < sm else sm
            if bound < best_cost:
                choice[k] = np.int32(j)
                k += 1
                jptr[k] = j + 1
            else:
                pruned += 1
    return best_set, best_cost, expanded, pruned, certified


def bnb_pmedian(D, m, budget):
    best_set, best_cost, expanded, pruned, certified = _bnb_pmedian(D, m, budget)
    return best_set, int(best_cost), int(expanded), int(pruned), bool(certified)
