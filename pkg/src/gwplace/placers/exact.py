"""Provably optimal gateway placement by branch and bound.

Explores gateway subsets depth-first in increasing index order over the
precomputed hop matrix. A partial choice is bounded below by summing, per
cell, the smaller of its distance to the partial set and the best it could
still get from any remaining candidate index; subsets whose bound cannot
beat the incumbent are pruned. The search certifies optimality unless the
node-expansion budget runs out first, in which case the incumbent is
returned flagged non-optimal.
"""

from dataclasses import dataclass


from .. import _kernels as kernels
from ..errors import BudgetExceeded
from ..graph import assign_to_gateways, hop_matrix
from ..placement import Placement

DEFAULT_NODE_BUDGET = 10**9


@dataclass
class ExactResult:
    placement: Placement
    total_hops: int
    certified: bool
    nodes_expanded: int
    nodes_pruned: int


def exact_place(g, m, node_budget=DEFAULT_NODE_BUDGET) -> ExactResult:
    if not 1 <= m <= g.n:
        raise ValueError(f"m must be in 1..{g.n}")
    D = hop_matrix(g)
    best_set, cost, expanded, pruned, certified = kernels.bnb_pmedian(D, m, node_budget)
    if best_set[0] < 0:
        raise BudgetExceeded(
            f"node budget {node_budget} exhausted before any complete gateway set"
        )
    placement = assign_to_gateways(g, best_set)
    return ExactResult(
        placement=placement,
        total_hops=int(cost),
        certified=certified,
        nodes_expanded=expanded,
        nodes_pruned=pruned,
    )
