"""Clustering-seeded genetic placement (K-GA and KM-GA).

Phase 1 runs best-of-replications clustering (K-means for K-GA, K-medoids
for KM-GA). Phase 2 picks t candidate cells per cluster center: the t
nearest cells to each centroid, or the medoid itself plus its t-1 nearest
cells. Phase 3 seeds the GA with all t^m one-pick-per-center combinations
(a combination whose picks collide yields fewer than m ones and is
repaired), then runs the shared generation loop.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from ..graph import assign_to_gateways, hop_matrix
from .clustering import kmeans_core, kmedoids_core
from .genetic import ga_evolve, repair_population


@dataclass(frozen=True)
class KgaConfig:
    """Hybrid settings; the GA population size is t ** m by construction."""

    t: int = 4
    replications: int = 50
    generations: int = 50
    mutation_prob: float = 0.01

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be >= 1")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")


def nearest_cells(xy, point, t, exclude=()):
    """Ids of the t cells nearest to a point (ties to the lowest id),
    skipping any ids in exclude."""
    px, py = point
    d2 = (xy[:, 0] - px) ** 2 + (xy[:, 1] - py) ** 2
    picked = []
    for idx in np.argsort(d2, kind="stable"):
        if int(idx) in exclude:
            continue
        picked.append(int(idx))
        if len(picked) == t:
            break
    if len(picked) < t:
        raise ValueError(f"fewer than t={t} distinct cells available")
    return np.array(picked, dtype=np.int64)


def seed_population(candidate_sets, n):
    """All one-pick-per-set combinations as bit chromosomes: (t^m, n)."""
    rows = list(product(*[tuple(int(c) for c in row) for row in candidate_sets]))
    pop = np.zeros((len(rows), n), dtype=np.uint8)
    for r, combo in enumerate(rows):
        pop[r, list(combo)] = 1  # colliding picks leave < m ones; repaired later
    return pop


def kga_place(topo, g, m, cfg: KgaConfig = None, rng=None):
    """K-means-seeded GA."""
    cfg = cfg or KgaConfig()
    D = hop_matrix(g)
    _, cent, _ = kmeans_core(topo.xy, m, cfg.replications, rng)
    candidates = np.stack([nearest_cells(topo.xy, c, cfg.t) for c in cent])
    pop = repair_population(seed_population(candidates, g.n), m, rng)
    best_bits, _ = ga_evolve(pop, D, m, cfg.generations, cfg.mutation_prob, rng)
    return assign_to_gateways(g, np.flatnonzero(best_bits))


def kmga_place(topo, g, m, cfg: KgaConfig = None, rng=None):
    """K-medoids-seeded GA: each candidate set is the medoid itself plus its
    t - 1 nearest other cells."""
    cfg = cfg or KgaConfig()
    D = hop_matrix(g)
    _, med, _ = kmedoids_core(topo.xy, m, cfg.replications, rng)
    candidates = []
    for medoid in med:
        medoid = int(medoid)
        if cfg.t == 1:
            candidates.append(np.array([medoid], dtype=np.int64))
        else:
            rest = nearest_cells(topo.xy, topo.xy[medoid], cfg.t - 1, exclude={medoid})
            candidates.append(np.concatenate([[medoid], rest]))
    pop = repair_population(seed_population(np.stack(candidates), g.n), m, rng)
    best_bits, _ = ga_evolve(pop, D, m, cfg.generations, cfg.mutation_prob, rng)
    return assign_to_gateways(g, np.flatnonzero(best_bits))
