"""Pure-numpy reference implementations of the hot kernels.

Every function here has a numba twin in ``_numba.py`` with identical
semantics; the pair is parity-tested. Float reductions are arranged so both
backends add in the same order wherever a comparison depends on the result.
"""

import numpy as np

UNREACHED = np.int32(1) << 30


def _dense_adjacency(indptr, indices, n):
    adj = np.zeros((n, n), dtype=np.float32)
    rows = np.repeat(np.arange(n), np.diff(indptr))
    adj[rows, indices] = 1.0
    return adj


def hops_from_sources(indptr, indices, n, sources):
    """Fewest-hop distance from each source to every cell (UNREACHED if none).

    Level-synchronous BFS over the whole source batch at once; unit edge
    weights make this equivalent to Dijkstra on the connectivity graph.
    """
    sources = np.asarray(sources, dtype=np.int64)
    ns = sources.shape[0]
    adj = _dense_adjacency(indptr, indices, n)
    dist = np.full((ns, n), UNREACHED, dtype=np.int32)
    frontier = np.zeros((ns, n), dtype=np.float32)
    frontier[np.arange(ns), sources] = 1.0
    reached = frontier > 0
    dist[reached] = 0
    level = 0
    while frontier.any():
        level += 1
        grown = (frontier @ adj) > 0
        nxt = grown & ~reached
        dist[nxt] = level
        reached |= nxt
        frontier = nxt.astype(np.float32)
    return dist


def population_total_hops(D, gateway_sets):
    """Total hops of each gateway set: sum over cells of the fewest-hop
    distance to the nearest listed gateway. ``gateway_sets`` is (P, m)."""
    gateway_sets = np.asarray(gateway_sets)
    return D[:, gateway_sets].min(axis=2).sum(axis=0, dtype=np.int64)


def lloyd(xy, centroids0, max_iter):
    """K-means (Lloyd) iterations from the given initial centroids.

    Stops when assignments are stable; empty clusters are reseeded with the
    cell currently farthest from its assigned centroid. Returns
    (centroids, labels, iterations_used).
    """
    n = xy.shape[0]
    m = centroids0.shape[0]
    x = xy[:, 0]
    y = xy[:, 1]
    cent = centroids0.astype(np.float64).copy()
    labels = np.full(n, -1, dtype=np.int32)
    it = 0
    for it in range(1, max_iter + 1):
        dx = x[:, None] - cent[None, :, 0]
        dy = y[:, None] - cent[None, :, 1]
        d2 = dx * dx + dy * dy
        new_labels = d2.argmin(axis=1).astype(np.int32)
        counts = np.bincount(new_labels, minlength=m)
        if not (counts == 0).any() and (new_labels == labels).all():
            break
        labels = new_labels
        sx = np.bincount(labels, weights=x, minlength=m)
        sy = np.bincount(labels, weights=y, minlength=m)
        nonzero = counts > 0
        cent[nonzero, 0] = sx[nonzero] / counts[nonzero]
        cent[nonzero, 1] = sy[nonzero] / counts[nonzero]
        if not nonzero.all():
            own = d2[np.arange(n), labels]
            for c in np.flatnonzero(~nonzero):
                far = int(own.argmax())
                cent[c, 0] = x[far]
                cent[c, 1] = y[far]
                own[far] = -1.0
    return cent, labels, it


def pam(xy, medoids0, max_iter):
    """K-medoids: assign to nearest medoid (squared Euclidean), then replace
    each medoid by the member of its cluster minimizing the within-cluster
    total squared distance; repeat until the medoid set is stable."""
    n = xy.shape[0]
    x = xy[:, 0]
    y = xy[:, 1]
    med = np.asarray(medoids0, dtype=np.int32).copy()
    m = med.shape[0]
    labels = np.zeros(n, dtype=np.int32)
    it = 0
    for it in range(1, max_iter + 1):
        dx = x[:, None] - x[med][None, :]
        dy = y[:, None] - y[med][None, :]
        labels = (dx * dx + dy * dy).argmin(axis=1).astype(np.int32)
        new_med = med.copy()
        for c in range(m):
            members = np.flatnonzero(labels == c)
            if members.size == 0:
                continue
            mx = x[members]
            my = y[members]
            ddx = mx[:, None] - mx[None, :]
            ddy = my[:, None] - my[None, :]
            costs = (ddx * ddx + ddy * ddy).sum(axis=1)
            new_med[c] = members[costs.argmin()]
        if (new_med == med).all():
            break
        med = new_med
    return med, labels, it


def ga_generation(D, population, parent_idx, cuts, mutation_mask, repair_keys, m):
    """One generation: gather parents, single-point crossover per pair,
    bit-flip mutation, repair to exactly m ones, fitness.

    All randomness is pre-drawn by the caller (parent indices, cut points,
    mutation mask, repair keys), so this function is deterministic. Repair
    keeps the m positions with the smallest ``key - bit`` score: a random
    subset of the ones survive when there are too many, random zeros are
    promoted when there are too few, and feasible rows pass unchanged.
    With an odd population the last selected parent skips crossover.
    Returns (children, total_hops_per_child).
    """
    P, N = population.shape
    parents = population[parent_idx]
    children = parents.copy()
    npairs = P // 2
    if npairs:
        first = np.arange(N)[None, :] < cuts[:, None]
        a = parents[0 : 2 * npairs : 2]
        b = parents[1 : 2 * npairs : 2]
        children[0 : 2 * npairs : 2] = np.where(first, a, b)
        children[1 : 2 * npairs : 2] = np.where(first, b, a)
    children ^= mutation_mask
    score = repair_keys - children
    ones = np.argpartition(score, m - 1, axis=1)[:, :m] if m < N else np.tile(np.arange(N), (P, 1))
    repaired = np.zeros_like(children)
    np.put_along_axis(repaired, ones, 1, axis=1)
    totals = population_total_hops(D, ones)
    return repaired, totals


def bnb_pmedian(D, m, budget):
    """Depth-first branch and bound over gateway subsets of size m.

    Enumerates combinations in increasing index order; a partial choice with
    next candidate index j is bounded below by summing, per cell, the smaller
    of its current distance and the best it could still get from any
    remaining candidate (a suffix minimum over columns j..n-1). Returns
    (best_set, best_cost, expanded, pruned, certified).
    """
    n = D.shape[0]
    suffmin = np.empty((n, n + 1), dtype=np.int32)
    suffmin[:, n] = UNREACHED
    for j in range(n - 1, -1, -1):
        suffmin[:, j] = np.minimum(suffmin[:, j + 1], D[:, j])
    best_cost = np.int64(1) << 62
    best_set = np.full(m, -1, dtype=np.int32)
    choice = np.full(m, -1, dtype=np.int32)
    dstack = np.full((m + 1, n), UNREACHED, dtype=np.int32)
    jptr = np.zeros(m, dtype=np.int64)
    expanded = 0
    pruned = 0
    k = 0
    while k >= 0:
        j = int(jptr[k])
        if j > n - (m - k):
            k -= 1
            continue
        jptr[k] += 1
        expanded += 1
        if expanded > budget:
            return best_set, int(best_cost), expanded - 1, pruned, False
        dnew = np.minimum(dstack[k], D[:, j])
        if k == m - 1:
            cost = dnew.sum(dtype=np.int64)
            if cost < best_cost:
                best_cost = cost
                best_set[: m - 1] = choice[: m - 1]
                best_set[m - 1] = j
        else:
            bound = np.minimum(dnew, suffmin[:, j + 1]).sum(dtype=np.int64)
            if bound < best_cost:
                choice[k] = j
                dstack[k + 1] = dnew
                k += 1
                jptr[k] = j + 1
            else:
                pruned += 1
    return best_set, int(best_cost), expanded, pruned, True
