#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs every kernel pair on the same seeded workloads and prints a timing
table. The workloads mirror where the package actually spends time: the
all-pairs hop matrix, GA generations, clustering restarts, and the exact
branch-and-bound search.

Usage: python benchmarks/bench_kernels.py [--full-scale]
"""

import argparse
import sys
import time

import numpy as np

from gwplace._kernels import _numpy as knp

try:
    from gwplace._kernels import _numba as knb
except ImportError:
    knb = None


def build_topology_graph(n, radius, seed):
    from gwplace.graph import build_graph, is_fully_connected
    from gwplace.topology import TopologyConfig, generate_uniform

    rng = np.random.default_rng(seed)
    cfg = TopologyConfig(scenario="uniform", density=n, area_radius=radius, seed=seed)
    while True:
        topo = generate_uniform(cfg, rng)
        g = build_graph(topo, 200.0)
        if is_fully_connected(g):
            return topo, g


def timed(fn, repeats):
    best = np.inf
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full-scale", action="store_true",
                        help="size the workloads at the reference density (slower numpy column)")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if args.full_scale:
        n, radius, pop, bnb_n, bnb_m = 310, 1000.0, 256, 100, 4
    else:
        n, radius, pop, bnb_n, bnb_m = 150, 700.0, 128, 50, 3

    topo, g = build_topology_graph(n, radius, seed=1)
    bnb_topo, bnb_g = build_topology_graph(bnb_n, radius * bnb_n / n, seed=2)
    rng = np.random.default_rng(3)

    D = knp.hops_from_sources(g.indptr, g.indices, g.n, np.arange(g.n))
    population = np.zeros((pop, n), np.uint8)
    for i in range(pop):
        population[i, rng.choice(n, size=4, replace=False)] = 1
    parent_idx = rng.integers(0, pop, size=pop)
    cuts = rng.integers(1, n, size=pop // 2)
    mutation = (rng.random((pop, n)) < 0.01).astype(np.uint8)
    keys = rng.random((pop, n))
    gateway_sets = np.stack([rng.choice(n, size=4, replace=False) for _ in range(pop)])
    centroids0 = topo.xy[rng.choice(n, size=4, replace=False)]
    medoids0 = rng.choice(n, size=4, replace=False).astype(np.int32)
    Db = knp.hops_from_sources(bnb_g.indptr, bnb_g.indices, bnb_g.n, np.arange(bnb_g.n))

    workloads = [
        (f"all-pairs hops (n={n})",
         lambda k: k.hops_from_sources(g.indptr, g.indices, g.n, np.arange(g.n))),
        (f"population fitness (P={pop})",
         lambda k: k.population_total_hops(D, gateway_sets)),
        (f"ga generation (P={pop}, N={n})",
         lambda k: k.ga_generation(D, population, parent_idx, cuts, mutation, keys, 4)),
        (f"lloyd k-means (n={n}, m=4)",
         lambda k: k.lloyd(topo.xy, centroids0, 300)),
        (f"pam k-medoids (n={n}, m=4)",
         lambda k: k.pam(topo.xy, medoids0, 300)),
        (f"branch-and-bound (N={bnb_n}, M={bnb_m})",
         lambda k: k.bnb_pmedian(Db, bnb_m, 10**9)),
    ]

    if knb is not None:
        for _, fn in workloads:  # warm the JIT outside the timers
            fn(knb)

    print(f"{'kernel':38s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, fn in workloads:
        t_np, r_np = timed(lambda: fn(knp), args.repeats)
        if knb is None:
            print(f"{name:38s} {t_np * 1e3:9.2f}ms {'n/a':>10s} {'':>8s}")
            continue
        t_nb, r_nb = timed(lambda: fn(knb), args.repeats)
        first_np = r_np[0] if isinstance(r_np, tuple) else r_np
        first_nb = r_nb[0] if isinstance(r_nb, tuple) else r_nb
        assert np.array_equal(np.asarray(first_np), np.asarray(first_nb)), name
        print(f"{name:38s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms {t_np / t_nb:7.1f}x")
    if knb is None:
        print("\nnumba not importable: only the fallback column was measured", file=sys.stderr)


if __name__ == "__main__":
    main()
