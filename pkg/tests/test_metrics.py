import numpy as np
import pytest

from conftest import graph_from_edges, path_graph, random_connected_edges
from gwplace.errors import DegenerateDenominator
from gwplace.graph import assign_to_gateways, hop_matrix
from gwplace.metrics import N_MINUS_M, N_MODE, CapacityParams, anh, bnc


def test_anh_path_example():
    p = assign_to_gateways(path_graph(5), [2])
    result = anh(p)
    assert result.total_hops == 6
    assert result.anh == pytest.approx(6 / 4)
    assert result.denominator_mode == N_MINUS_M


def test_anh_all_gateways():
    p = assign_to_gateways(path_graph(4), range(4))
    assert anh(p, N_MODE).anh == 0.0
    with pytest.raises(DegenerateDenominator):
        anh(p, N_MINUS_M)


def test_anh_matches_hop_matrix_oracle():
    rng = np.random.default_rng(5)
    edges = random_connected_edges(rng, 20)
    g = graph_from_edges(20, edges)
    D = hop_matrix(g)
    gws = [3, 12]
    p = assign_to_gateways(g, gws)
    expected = D[:, gws].min(axis=1).sum() / 18
    assert anh(p).anh == pytest.approx(expected)


def test_anh_mode_inequality():
    p = assign_to_gateways(path_graph(6), [1, 4])
    assert anh(p, N_MINUS_M).anh >= anh(p, N_MODE).anh
    zero = assign_to_gateways(path_graph(3), range(3))
    assert anh(zero, N_MODE).anh == 0.0


def test_bnc_reference_anchor():
    # min(310*1, 4*99)/2.44 + 4*1 = 131.0491803...
    result = bnc(2.44, 310, 4, CapacityParams(ws=1.0, wg=100.0))
    assert result.capacity == pytest.approx(131.04918032786884, rel=1e-12)


def test_bnc_small_hand_case():
    assert bnc(1.0, 4, 4, CapacityParams(ws=1.0, wg=2.0)).capacity == pytest.approx(8.0)


def test_bnc_gateway_side_min():
    # min(310, 310/2.18 -> 146.21...) arithmetic check
    assert bnc(2.18, 310, 4).capacity == pytest.approx(310 / 2.18 + 4, rel=1e-12)


def test_bnc_strictly_decreasing_in_anh():
    values = [bnc(a, 310, 4).capacity for a in np.linspace(0.5, 5.0, 40)]
    assert all(hi > lo for hi, lo in zip(values, values[1:]))


def test_bnc_floor_is_gateway_traffic():
    params = CapacityParams(ws=1.0, wg=100.0)
    assert bnc(1000.0, 310, 4, params).capacity >= 4 * params.ws


def test_bnc_rejects_degenerate_anh():
    with pytest.raises(ZeroDivisionError):
        bnc(0.0, 10, 2)
    with pytest.raises(ValueError):
        bnc(-1.0, 10, 2)


def test_capacity_params_validated():
    with pytest.raises(ValueError):
        CapacityParams(ws=2.0, wg=1.0)
    with pytest.raises(ValueError):
        CapacityParams(ws=0.0, wg=1.0)
