"""K-means and K-medoids gateway placement.

Both run a fixed number of random-restart replications and keep the run
with the smallest total within-cluster squared Euclidean distance. K-means
snaps each final centroid to its nearest cell; K-medoids' medoids are cells
already.
"""

import numpy as np

from .. import _kernels as kernels
from ..graph import assign_to_gateways

MAX_CLUSTER_ITER = 300


def snap_to_cells(xy, targets):
    """Nearest cell to each target point, kept distinct: ties go to the
    lowest id, and a collision promotes the later target to its next-nearest
    cell."""
    chosen = []
    taken = set()
    for tx, ty in np.asarray(targets, dtype=np.float64).reshape(-1, 2):
        d2 = (xy[:, 0] - tx) ** 2 + (xy[:, 1] - ty) ** 2
        for idx in np.argsort(d2, kind="stable"):
            if int(idx) not in taken:
                chosen.append(int(idx))
                taken.add(int(idx))
                break
    return np.array(chosen, dtype=np.int64)


def kmeans_core(xy, m, replications, rng, max_iter=MAX_CLUSTER_ITER):
    """Best-of-replications Lloyd clustering; initial centroids are m
    distinct cells drawn uniformly. Returns (sse, centroids, labels)."""
    n = xy.shape[0]
    best = None
    for _ in range(replications):
        init = rng.choice(n, size=m, replace=False)
        cent, labels, _ = kernels.lloyd(xy, xy[init], max_iter)
        sse = ((xy - cent[labels]) ** 2).sum()
        if best is None or sse < best[0]:
            best = (sse, cent, labels)
    return best


def kmeans_place(topo, g, m, rng, replications=100):
    """Gateways = the cells nearest to the best replication's centroids."""
    sse, cent, _ = kmeans_core(topo.xy, m, replications, rng)
    return assign_to_gateways(g, snap_to_cells(topo.xy, cent))


def kmedoids_core(xy, m, replications, rng, max_iter=MAX_CLUSTER_ITER):
    """Best-of-replications K-medoids with random initial medoids and
    within-cluster swap updates. Returns (cost, medoids, labels)."""
    n = xy.shape[0]
    best = None
    for _ in range(replications):
        init = rng.choice(n, size=m, replace=False)
        med, labels, _ = kernels.pam(xy, init.astype(np.int32), max_iter)
        cost = ((xy - xy[med][labels]) ** 2).sum()
        if best is None or cost < best[0]:
            best = (cost, med, labels)
    return best


def kmedoids_place(topo, g, m, rng, replications=100):
    """Gateways = the best replication's medoids."""
    cost, med, _ = kmedoids_core(topo.xy, m, replications, rng)
    return assign_to_gateways(g, med)
