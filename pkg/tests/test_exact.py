import numpy as np
import pytest

from conftest import connected_uniform, exhaustive_best_total, path_graph
from gwplace.errors import BudgetExceeded
from gwplace.graph import hop_matrix
from gwplace.placers import GaConfig, KgaConfig, MethodSettings, exact_place, run_method


def test_exact_path_median():
    result = exact_place(path_graph(5), 1)
    assert result.placement.gateway_set() == {2}
    assert result.total_hops == 6
    assert result.certified


def test_exact_six_cell_path_pair():
    g = path_graph(6)
    D = hop_matrix(g)
    # oracle: all 15 pairs by brute force
    best_total, best_set = exhaustive_best_total(D, 2)
    result = exact_place(g, 2)
    assert result.total_hops == best_total == 4
    assert result.placement.gateway_set() == best_set == {1, 4}


def test_exact_matches_exhaustive_n40():
    topo, g = connected_uniform(77, 40, 420.0)
    D = hop_matrix(g)
    best_total, _ = exhaustive_best_total(D, 3)
    result = exact_place(g, 3)
    assert result.certified
    assert result.total_hops == best_total
    assert result.placement.total_hops == best_total


def test_exact_counts_and_certificate():
    topo, g = connected_uniform(78, 30, 350.0)
    result = exact_place(g, 2)
    assert result.certified
    assert result.nodes_expanded > 0
    assert result.nodes_pruned >= 0


def test_exact_budget_returns_incumbent_uncertified():
    topo, g = connected_uniform(79, 30, 350.0)
    full = exact_place(g, 3)
    limited = exact_place(g, 3, node_budget=full.nodes_expanded // 4)
    assert not limited.certified
    assert limited.total_hops >= full.total_hops
    assert limited.placement.m == 3


def test_exact_budget_too_small_raises():
    topo, g = connected_uniform(80, 20, 300.0)
    with pytest.raises(BudgetExceeded):
        exact_place(g, 3, node_budget=2)


def test_exact_rejects_bad_m():
    g = path_graph(4)
    with pytest.raises(ValueError):
        exact_place(g, 0)
    with pytest.raises(ValueError):
        exact_place(g, 5)


def test_exact_dominates_heuristics_quick():
    settings = MethodSettings(
        kmeans_replications=15,
        kmedoids_replications=15,
        ga=GaConfig(population_size=30, generations=15),
        kga=KgaConfig(t=2, replications=10, generations=10),
        kmga=KgaConfig(t=2, replications=10, generations=10),
    )
    for seed in range(10):
        topo, g = connected_uniform(900 + seed, 35, 400.0)
        exact_total = exact_place(g, 3).total_hops
        for method in ("baseline", "kmeans", "kmedoids", "ga", "kga", "kmga"):
            rng = np.random.default_rng(seed)
            placement = run_method(method, topo, g, 3, rng, settings).placement
            assert placement.total_hops >= exact_total, (method, seed)
