"""Shared test fixtures and independent oracles."""

import numpy as np
import pytest

from gwplace.graph import ConnectivityGraph, build_graph, is_fully_connected
from gwplace.topology import TopologyConfig, generate_uniform

BIG = 10**9


def floyd_warshall(n, edges):
    """Independent all-pairs hop oracle (classic relaxation, no BFS)."""
    D = np.full((n, n), BIG, dtype=np.int64)
    np.fill_diagonal(D, 0)
    for i, j in edges:
        D[i, j] = 1
        D[j, i] = 1
    for k in range(n):
        D = np.minimum(D, D[:, k : k + 1] + D[k : k + 1, :])
    return D


def graph_from_edges(n, edges):
    """ConnectivityGraph built straight from an edge list (non-geometric)."""
    adj = np.zeros((n, n), dtype=bool)
    for i, j in edges:
        adj[i, j] = True
        adj[j, i] = True
    degrees = adj.sum(axis=1)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    indices = np.nonzero(adj)[1].astype(np.int32)
    return ConnectivityGraph(n, indptr, indices, transmission_range=float("nan"))


def random_connected_edges(rng, n, extra_edge_prob=0.08):
    """Random spanning tree plus random extra edges: connected by design."""
    edges = set()
    order = rng.permutation(n)
    for idx in range(1, n):
        attach = order[rng.integers(0, idx)]
        edges.add((min(order[idx], attach), max(order[idx], attach)))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < extra_edge_prob:
                edges.add((i, j))
    return sorted(edges)


def path_graph(k, spacing=150.0, rng_m=200.0):
    """k cells on a line, consecutive cells adjacent, nothing else."""
    xy = np.column_stack([np.arange(k) * spacing, np.zeros(k)])
    return build_graph(xy, rng_m)


def connected_uniform(seed, n, radius, separation=50.0, rng_m=200.0, max_draws=200):
    """A fully connected uniform topology, redrawing until connected."""
    rng = np.random.default_rng(seed)
    cfg = TopologyConfig(
        scenario="uniform", density=n, area_radius=radius, seed=seed, min_separation=separation
    )
    for _ in range(max_draws):
        topo = generate_uniform(cfg, rng)
        g = build_graph(topo, rng_m)
        if is_fully_connected(g):
            return topo, g
    raise RuntimeError(f"no connected uniform topology (n={n}, radius={radius})")


def exhaustive_best_total(D, m):
    """Optimal total hops by brute-force enumeration of every gateway subset."""
    from itertools import combinations

    n = D.shape[0]
    best = None
    combos = np.array(list(combinations(range(n), m)), dtype=np.int64)
    costs = D[:, combos].min(axis=2).sum(axis=0, dtype=np.int64)
    i = int(costs.argmin())
    return int(costs[i]), set(int(v) for v in combos[i])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
