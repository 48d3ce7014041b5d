"""Seven gateway placers behind one dispatch surface."""

from dataclasses import dataclass, field

from ..placement import Placement, check_placement, read_placement, write_placement
from .baseline import baseline_place
from .clustering import kmeans_place, kmedoids_place
from .exact import DEFAULT_NODE_BUDGET, ExactResult, exact_place
from .genetic import GaConfig, ga_evolve, ga_place, repair, repair_population
from .hybrid import KgaConfig, kga_place, kmga_place

BASELINE = "baseline"
KMEANS = "kmeans"
KMEDOIDS = "kmedoids"
GA = "ga"
KGA = "kga"
KMGA = "kmga"
EXACT = "exact"

METHODS = (BASELINE, KMEANS, KMEDOIDS, GA, KGA, KMGA, EXACT)


@dataclass(frozen=True)
class MethodSettings:
    """Per-method knobs, defaulting to the reference experiment settings."""

    kmeans_replications: int = 100
    kmedoids_replications: int = 100
    ga: GaConfig = field(default_factory=GaConfig)
    kga: KgaConfig = field(default_factory=KgaConfig)
    kmga: KgaConfig = field(default_factory=KgaConfig)
    exact_budget: int = DEFAULT_NODE_BUDGET


@dataclass
class MethodResult:
    placement: Placement
    certified_optimal: bool = False


def run_method(name, topo, g, m, rng, settings: MethodSettings = None) -> MethodResult:
    """Run one placer by name. ``rng`` is ignored by the deterministic
    methods (baseline, exact)."""
    settings = settings or MethodSettings()
    if name == BASELINE:
        return MethodResult(baseline_place(topo, g, m))
    if name == KMEANS:
        return MethodResult(kmeans_place(topo, g, m, rng, settings.kmeans_replications))
    if name == KMEDOIDS:
        return MethodResult(kmedoids_place(topo, g, m, rng, settings.kmedoids_replications))
    if name == GA:
        return MethodResult(ga_place(g, m, settings.ga, rng))
    if name == KGA:
        return MethodResult(kga_place(topo, g, m, settings.kga, rng))
    if name == KMGA:
        return MethodResult(kmga_place(topo, g, m, settings.kmga, rng))
    if name == EXACT:
        result = exact_place(g, m, settings.exact_budget)
        return MethodResult(result.placement, certified_optimal=result.certified)
    raise ValueError(f"unknown method {name!r}")


__all__ = [
    "METHODS",
    "BASELINE",
    "KMEANS",
    "KMEDOIDS",
    "GA",
    "KGA",
    "KMGA",
    "EXACT",
    "GaConfig",
    "KgaConfig",
    "MethodSettings",
    "MethodResult",
    "Placement",
    "ExactResult",
    "run_method",
    "baseline_place",
    "kmeans_place",
    "kmedoids_place",
    "ga_place",
    "ga_evolve",
    "kga_place",
    "kmga_place",
    "exact_place",
    "repair",
    "repair_population",
    "check_placement",
    "read_placement",
    "write_placement",
]
