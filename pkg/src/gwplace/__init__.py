"""Gateway placement and hop-count capacity evaluation for ultra-dense
wireless backhaul networks: topology generation, connectivity graphs, seven
placement methods (including a clustering-seeded genetic search and a
provably optimal branch-and-bound), ANH/BNC metrics, and a reproducible
Monte Carlo experiment harness."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (
    BudgetExceeded,
    DegenerateDenominator,
    GwplaceError,
    NotConnected,
    PlacementExhausted,
    TooFewSamples,
)
from .graph import (
    ConnectivityGraph,
    ShortestPathTree,
    assign_to_gateways,
    build_graph,
    hop_matrix,
    is_fully_connected,
    sssp_hops,
    write_edge_list,
)
from .harness import (
    ExperimentConfig,
    MethodSummary,
    RawRecord,
    confidence_interval,
    run_experiment,
    seed_schedule,
)
from .metrics import N_MINUS_M, N_MODE, AnhResult, BncResult, CapacityParams, anh, bnc
from .placement import Placement, check_placement
from .placers import (
    METHODS,
    ExactResult,
    GaConfig,
    KgaConfig,
    MethodSettings,
    baseline_place,
    exact_place,
    ga_place,
    kga_place,
    kmeans_place,
    kmedoids_place,
    kmga_place,
    repair,
    run_method,
)
from .topology import (
    SCENARIOS,
    Topology,
    TopologyConfig,
    cluster_centers,
    draw_node_count,
    generate_cluster,
    generate_gaussian,
    generate_topology,
    generate_uniform,
    read_topology,
    validate_topology,
    write_topology,
)

__version__ = "0.1.0"
