"""Genetic search over binary gateway strings.

A chromosome is a length-N bit string with exactly m ones after repair; its
fitness is the average hop count of the gateway set it encodes (lower is
better). One generation performs fitness-proportional roulette selection
with weight 1/ANH, single-point crossover on every consecutive parent pair,
per-gene bit-flip mutation, and repair back to exactly m ones. The best
chromosome ever seen is tracked outside the population; the new population
replaces the old one wholesale (no elitist carryover).
"""

from dataclasses import dataclass

import numpy as np

from .. import _kernels as kernels
from ..graph import assign_to_gateways, hop_matrix


@dataclass(frozen=True)
class GaConfig:
    """Standalone GA settings (hybrids override generations and derive the
    population size from their candidate grids)."""

    population_size: int = 300
    generations: int = 100
    mutation_prob: float = 0.01

    def __post_init__(self):
        if self.population_size < 1:
            raise ValueError("population_size must be >= 1")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError("mutation_prob must be in [0, 1]")


def repair(bits, m, rng):
    """Restore exactly m ones: flip randomly chosen surplus ones to zero, or
    randomly chosen zeros to one. Feasible input comes back unchanged."""
    out = np.asarray(bits, dtype=np.uint8).copy()
    ones = np.flatnonzero(out == 1)
    if ones.size > m:
        drop = rng.choice(ones.size, size=ones.size - m, replace=False)
        out[ones[drop]] = 0
    elif ones.size < m:
        zeros = np.flatnonzero(out == 0)
        add = rng.choice(zeros.size, size=m - ones.size, replace=False)
        out[zeros[add]] = 1
    return out


def repair_population(population, m, rng):
    """Batched repair with the same semantics as repair(): per row, a random
    subset of surplus ones is dropped (or random zeros promoted); feasible
    rows pass through unchanged."""
    P, N = population.shape
    keys = rng.random((P, N))
    score = keys - population
    if m < N:
        ones = np.argpartition(score, m - 1, axis=1)[:, :m]
    else:
        ones = np.tile(np.arange(N), (P, 1))
    out = np.zeros_like(population)
    np.put_along_axis(out, ones, 1, axis=1)
    return out


def ga_evolve(population, D, m, generations, mutation_prob, rng, history=None):
    """Run the generation loop and return (best_bits, best_total_hops).

    ``population`` must be feasible (exactly m ones per row); ``D`` is the
    all-pairs hop matrix. If any chromosome already covers every cell at
    zero hops (only possible when m = n) it is returned immediately. With an
    odd population size the last selected parent skips crossover and goes
    straight to mutation. Pass a list as ``history`` to collect the
    best-so-far hop total after every generation.
    """
    pop = np.ascontiguousarray(population, dtype=np.uint8)
    P, N = pop.shape
    gw = np.nonzero(pop)[1].reshape(P, m)
    totals = kernels.population_total_hops(D, gw)
    best_at = int(totals.argmin())
    best_total = int(totals[best_at])
    best_bits = pop[best_at].copy()
    if best_total == 0:
        return best_bits, 0
    for _ in range(generations):
        weights = 1.0 / totals  # proportional to 1/ANH (fixed denominator cancels)
        probs = weights / weights.sum()
        parent_idx = rng.choice(P, size=P, p=probs)
        cuts = rng.integers(1, N, size=P // 2)
        mutation = (rng.random((P, N)) < mutation_prob).astype(np.uint8)
        keys = rng.random((P, N))
        pop, totals = kernels.ga_generation(D, pop, parent_idx, cuts, mutation, keys, m)
        gen_best = int(totals.min())
        if gen_best < best_total:
            best_total = gen_best
            best_bits = pop[int(totals.argmin())].copy()
        if history is not None:
            history.append(best_total)
        if best_total == 0:
            break
    return best_bits, best_total


def ga_place(g, m, cfg: GaConfig = None, rng=None):
    """Standalone GA: random feasible initial population, then the shared
    generation loop; decode the best chromosome into a Placement."""
    cfg = cfg or GaConfig()
    D = hop_matrix(g)
    pop = np.zeros((cfg.population_size, g.n), dtype=np.uint8)
    for i in range(cfg.population_size):
        pop[i, rng.choice(g.n, size=m, replace=False)] = 1
    best_bits, _ = ga_evolve(pop, D, m, cfg.generations, cfg.mutation_prob, rng)
    return assign_to_gateways(g, np.flatnonzero(best_bits))
