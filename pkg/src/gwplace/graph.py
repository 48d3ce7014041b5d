"""Connectivity graph, hop distances, and gateway assignment.

Edges join every cell pair within transmission range (boundary inclusive);
all edges have unit weight, so fewest-hop distances come from breadth-first
search, which is Dijkstra with unit lengths.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as kernels
from .errors import NotConnected
from .placement import Placement

DEFAULT_RANGE = 200.0


@dataclass
class ConnectivityGraph:
    """Symmetric unit-weight adjacency in CSR form (neighbor lists sorted)."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    transmission_range: float

    _hops: np.ndarray = field(default=None, repr=False, compare=False)

    def neighbors(self, i) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2


def build_graph(topo, transmission_range: float = DEFAULT_RANGE) -> ConnectivityGraph:
    """Connectivity graph of a topology (or a raw (n, 2) coordinate array):
    edge (i, j) present iff the Euclidean distance is <= transmission_range."""
    xy = topo.xy if hasattr(topo, "xy") else np.asarray(topo, dtype=np.float64).reshape(-1, 2)
    n = xy.shape[0]
    diff = xy[:, None, :] - xy[None, :, :]
    adjacent = (diff**2).sum(axis=2) <= transmission_range**2
    np.fill_diagonal(adjacent, False)
    degrees = adjacent.sum(axis=1)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    indices = np.nonzero(adjacent)[1].astype(np.int32)
    return ConnectivityGraph(n, indptr, indices, transmission_range)


def is_fully_connected(g: ConnectivityGraph) -> bool:
    """True iff the graph is a single connected component (an isolated-free
    graph with two components still fails: some cell could not reach a
    gateway placed in the other part)."""
    if g.n == 0:
        return True
    dist = kernels.hops_from_sources(g.indptr, g.indices, g.n, np.array([0]))
    return bool((dist[0] < kernels.UNREACHED).all())


def hop_matrix(g: ConnectivityGraph) -> np.ndarray:
    """All-pairs fewest-hop distances as an (n, n) int32 matrix; cached on
    the graph. Raises NotConnected if any pair is unreachable."""
    if g._hops is None:
        D = kernels.hops_from_sources(g.indptr, g.indices, g.n, np.arange(g.n))
        if (D >= kernels.UNREACHED).any():
            raise NotConnected("graph has unreachable cell pairs")
        g._hops = D
    return g._hops


@dataclass
class ShortestPathTree:
    """Breadth-first tree from one root: per-cell hop count and predecessor
    (root's parent is -1; unreachable cells get dist -1, parent -1)."""

    root: int
    parent: np.ndarray
    dist: np.ndarray


def sssp_hops(g: ConnectivityGraph, source: int) -> ShortestPathTree:
    """Fewest-hop distances from one source. Deterministic tie-break: each
    cell's parent is the lowest-id neighbor one hop closer to the source."""
    raw = kernels.hops_from_sources(g.indptr, g.indices, g.n, np.array([source]))[0]
    dist = np.where(raw >= kernels.UNREACHED, -1, raw).astype(np.int32)
    parent = np.full(g.n, -1, dtype=np.int32)
    for v in range(g.n):
        if v == source or dist[v] <= 0:
            continue
        nbrs = g.neighbors(v)
        closer = nbrs[dist[nbrs] == dist[v] - 1]
        parent[v] = closer[0]  # neighbor lists are sorted, so this is the lowest id
    return ShortestPathTree(root=source, parent=parent, dist=dist)


def write_edge_list(g: ConnectivityGraph, path):
    """Graph dump: one ``i,j`` line per edge with i < j, sorted."""
    with open(path, "w") as fh:
        for i in range(g.n):
            for j in g.neighbors(i):
                if i < j:
                    fh.write(f"{i},{j}\n")


def assign_to_gateways(g: ConnectivityGraph, gateways) -> Placement:
    """Assign every cell to its fewest-hop gateway (ties to the lowest
    gateway id); gateways serve themselves at zero hops."""
    gw = np.unique(np.asarray(list(gateways), dtype=np.int64))
    if gw.size == 0:
        raise ValueError("gateway set is empty")
    if gw[0] < 0 or gw[-1] >= g.n:
        raise ValueError(f"gateway ids out of range 0..{g.n - 1}")
    dist = kernels.hops_from_sources(g.indptr, g.indices, g.n, gw)
    if (dist.min(axis=0) >= kernels.UNREACHED).any():
        raise NotConnected("some cell cannot reach any gateway")
    nearest = dist.argmin(axis=0)  # first minimum = lowest gateway id (gw sorted)
    return Placement(
        gateways=gw.astype(np.int32),
        assignment=gw[nearest].astype(np.int32),
        hops=dist[nearest, np.arange(g.n)].astype(np.int32),
    )
