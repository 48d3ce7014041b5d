"""Monte Carlo experiment driver.

For every (scenario, density) cell, generates the configured number of
fully connected topologies (disconnected draws are discarded and redrawn),
runs every selected method on the same topologies (paired design), and
aggregates ANH, BNC and wall-clock runtime with 95% confidence intervals.

Seeding: every topology and every method run gets its own stream derived by
hashing (master seed, scenario, density, replication[, method]), so any
single cell of the grid is reproducible in isolation and results do not
depend on worker count or execution order. Topology streams exclude the
method name, which is what makes the design paired.

Runtime is measured around the placer call only; the shared all-pairs hop
matrix is precomputed per topology before any method is timed, mirroring
the solver-gets-the-distance-matrix convention of the exact formulation.
"""

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import GwplaceError, TooFewSamples
from .graph import build_graph, hop_matrix, is_fully_connected
from .metrics import DENOMINATOR_MODES, N_MINUS_M, CapacityParams, anh, bnc
from .placers import METHODS, MethodSettings, run_method
from .topology import (
    CLUSTER,
    GAUSSIAN,
    SCENARIOS,
    UNIFORM,
    TopologyConfig,
    draw_node_count,
    generate_cluster,
    generate_gaussian,
    generate_uniform,
)

Z_95 = 1.96
DEFAULT_METHODS = ("baseline", "kmeans", "kmedoids", "ga", "kga", "kmga")


@dataclass(frozen=True)
class ExperimentConfig:
    scenarios: tuple = (UNIFORM,)
    densities: tuple = (310, 350, 390, 430, 470)
    methods: tuple = DEFAULT_METHODS
    m: int = 4
    replications: int = 100
    seed: int = 0
    area_radius: float = 1000.0
    transmission_range: float = 200.0
    poisson: bool = False
    denominator: str = N_MINUS_M
    capacity: CapacityParams = field(default_factory=CapacityParams)
    settings: MethodSettings = field(default_factory=MethodSettings)
    record_runtime: bool = True
    jobs: int = 1
    max_regenerations: int = 1000
    min_separation: float | None = None
    gaussian_sigma_fraction: float = 0.40
    cluster_count: int = 6
    cluster_ring_radius: float = 500.0
    cluster_radius: float = 100.0
    cluster_fraction: float = 0.5
    cluster_separation: float = 25.0

    def validate(self):
        for s in self.scenarios:
            if s not in SCENARIOS:
                raise ValueError(f"unknown scenario {s!r}")
        for name in self.methods:
            if name not in METHODS:
                raise ValueError(f"unknown method {name!r}")
        if not self.scenarios or not self.densities or not self.methods:
            raise ValueError("scenarios, densities and methods must be non-empty")
        if self.replications < 2:
            raise ValueError("replications must be >= 2 (confidence intervals need variance)")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        for d in self.densities:
            if d <= self.m:
                raise ValueError(f"density {d} must exceed the gateway count m={self.m}")
        if self.denominator not in DENOMINATOR_MODES:
            raise ValueError(f"unknown denominator mode {self.denominator!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


@dataclass(frozen=True)
class RawRecord:
    scenario: str
    density: int
    replication: int
    method: str
    anh: float
    bnc_gbps: float
    runtime_s: float | None
    certified_optimal: bool
    topology_checksum: str


@dataclass(frozen=True)
class MethodSummary:
    scenario: str
    density: int
    method: str
    anh_mean: float
    anh_ci_low: float
    anh_ci_high: float
    bnc_mean: float
    bnc_ci_low: float
    bnc_ci_high: float
    runtime_mean: float | None
    runtime_ci: float | None  # half-width
    gap_vs_exact_pct: float | None
    runtime_saving_pct: float | None


class ExperimentFailure(GwplaceError):
    """A replication failed; carries whatever records completed."""

    def __init__(self, message, partial_records):
        super().__init__(message)
        self.partial_records = partial_records


def seed_schedule(master_seed, scenario, density, replication_index, method=None) -> int:
    """Deterministic 64-bit stream seed for one grid cell. Topology seeds
    omit the method so all methods see identical topologies."""
    key = f"{master_seed}|{scenario}|{density}|{replication_index}|{method or ''}"
    return int.from_bytes(hashlib.blake2b(key.encode(), digest_size=8).digest(), "big")


def confidence_interval(samples):
    """(mean, low, high) with a normal-approximation 95% interval:
    mean +- 1.96 * s / sqrt(n)."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.size < 2:
        raise TooFewSamples("confidence interval needs at least 2 samples")
    mean = float(samples.mean())
    half = Z_95 * float(samples.std(ddof=1)) / float(np.sqrt(samples.size))
    return mean, mean - half, mean + half


def _topology_config(cfg: ExperimentConfig, scenario, density, seed) -> TopologyConfig:
    return TopologyConfig(
        scenario=scenario,
        density=density,
        area_radius=cfg.area_radius,
        seed=seed,
        poisson=cfg.poisson,
        min_separation=cfg.min_separation,
        gaussian_sigma_fraction=cfg.gaussian_sigma_fraction,
        cluster_count=cfg.cluster_count,
        cluster_ring_radius=cfg.cluster_ring_radius,
        cluster_radius=cfg.cluster_radius,
        cluster_fraction=cfg.cluster_fraction,
        cluster_separation=cfg.cluster_separation,
    )


_GENERATORS = {UNIFORM: generate_uniform, GAUSSIAN: generate_gaussian, CLUSTER: generate_cluster}


def connected_topology(cfg: ExperimentConfig, scenario, density, replication):
    """One fully connected topology for a grid cell, redrawing from the same
    stream until connectivity holds. Returns (topology, graph)."""
    seed = seed_schedule(cfg.seed, scenario, density, replication)
    tcfg = _topology_config(cfg, scenario, density, seed)
    rng = np.random.default_rng(seed)
    generator = _GENERATORS[scenario]
    for _ in range(cfg.max_regenerations):
        n = draw_node_count(tcfg, rng)
        if n <= cfg.m:
            continue  # Poisson draw too small to host m gateways
        topo = generator(tcfg, rng, n=n)
        g = build_graph(topo, cfg.transmission_range)
        if is_fully_connected(g):
            return topo, g
    raise GwplaceError(
        f"no connected topology after {cfg.max_regenerations} draws "
        f"(scenario={scenario}, density={density}, replication={replication})"
    )


def run_cell(cfg: ExperimentConfig, scenario, density, replication):
    """All selected methods on one topology; returns the raw records."""
    topo, g = connected_topology(cfg, scenario, density, replication)
    checksum = topo.checksum()
    hop_matrix(g)  # shared distance input, excluded from per-method timing
    records = []
    for method in cfg.methods:
        rng = np.random.default_rng(seed_schedule(cfg.seed, scenario, density, replication, method))
        start = time.perf_counter()
        result = run_method(method, topo, g, cfg.m, rng, cfg.settings)
        elapsed = time.perf_counter() - start
        anh_value = anh(result.placement, cfg.denominator).anh
        bnc_value = bnc(anh_value, topo.n, cfg.m, cfg.capacity).capacity
        records.append(
            RawRecord(
                scenario=scenario,
                density=density,
                replication=replication,
                method=method,
                anh=anh_value,
                bnc_gbps=bnc_value,
                runtime_s=elapsed if cfg.record_runtime else None,
                certified_optimal=result.certified_optimal,
                topology_checksum=checksum,
            )
        )
    return records


def _run_cell_task(args):
    return run_cell(*args)


def run_experiment(cfg: ExperimentConfig):
    """Run the full grid; returns (records, summaries) with records in
    canonical (scenario, density, replication, method) order regardless of
    worker count. Raises ExperimentFailure carrying partial records if any
    replication fails."""
    cfg.validate()
    cells = [
        (cfg, scenario, density, replication)
        for scenario in cfg.scenarios
        for density in cfg.densities
        for replication in range(cfg.replications)
    ]
    records = []
    try:
        if cfg.jobs > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                for cell_records in pool.map(_run_cell_task, cells):
                    records.extend(cell_records)
        else:
            for cell in cells:
                records.extend(run_cell(*cell))
    except GwplaceError as exc:
        raise ExperimentFailure(str(exc), sort_records(records, cfg)) from exc
    records = sort_records(records, cfg)
    return records, summarize(records)


def sort_records(records, cfg: ExperimentConfig):
    scen_order = {s: i for i, s in enumerate(cfg.scenarios)}
    dens_order = {d: i for i, d in enumerate(cfg.densities)}
    meth_order = {name: i for i, name in enumerate(cfg.methods)}
    return sorted(
        records,
        key=lambda r: (
            scen_order[r.scenario],
            dens_order[r.density],
            r.replication,
            meth_order[r.method],
        ),
    )


def summarize(records):
    """Per (scenario, density, method) means and 95% CIs, plus each
    heuristic's ANH gap and runtime saving against the exact rows when the
    exact method is present in the same cell."""
    cells = {}
    order = []
    for rec in records:
        key = (rec.scenario, rec.density)
        if key not in cells:
            cells[key] = {}
            order.append(key)
        cells[key].setdefault(rec.method, []).append(rec)
    summaries = []
    for key in order:
        scenario, density = key
        per_method = cells[key]
        exact_anh_mean = None
        exact_rt_mean = None
        if "exact" in per_method:
            exact_anh_mean = float(np.mean([r.anh for r in per_method["exact"]]))
            times = [r.runtime_s for r in per_method["exact"] if r.runtime_s is not None]
            exact_rt_mean = float(np.mean(times)) if times else None
        for method, recs in per_method.items():
            anh_mean, anh_lo, anh_hi = confidence_interval([r.anh for r in recs])
            bnc_mean, bnc_lo, bnc_hi = confidence_interval([r.bnc_gbps for r in recs])
            times = [r.runtime_s for r in recs if r.runtime_s is not None]
            if len(times) >= 2:
                rt_mean, rt_lo, _ = confidence_interval(times)
                rt_ci = rt_mean - rt_lo
            elif times:
                rt_mean, rt_ci = float(times[0]), None
            else:
                rt_mean, rt_ci = None, None
            gap = None
            saving = None
            if exact_anh_mean and method != "exact":
                gap = 100.0 * (anh_mean - exact_anh_mean) / exact_anh_mean
                if exact_rt_mean and rt_mean is not None:
                    saving = 100.0 * (1.0 - rt_mean / exact_rt_mean)
            summaries.append(
                MethodSummary(
                    scenario=scenario,
                    density=density,
                    method=method,
                    anh_mean=anh_mean,
                    anh_ci_low=anh_lo,
                    anh_ci_high=anh_hi,
                    bnc_mean=bnc_mean,
                    bnc_ci_low=bnc_lo,
                    bnc_ci_high=bnc_hi,
                    runtime_mean=rt_mean,
                    runtime_ci=rt_ci,
                    gap_vs_exact_pct=gap,
                    runtime_saving_pct=saving,
                )
            )
    return summaries


RAW_HEADER = "scenario,density,replication,method,anh,bnc_gbps,runtime_s,certified_optimal,topology_checksum"
SUMMARY_HEADER = (
    "scenario,density,method,anh_mean,anh_ci_low,anh_ci_high,"
    "bnc_mean,bnc_ci_low,bnc_ci_high,runtime_mean,runtime_ci,"
    "gap_vs_exact_pct,runtime_saving_pct"
)


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_raw_records(records, path):
    lines = [RAW_HEADER]
    for r in records:
        lines.append(
            f"{r.scenario},{r.density},{r.replication},{r.method},"
            f"{r.anh!r},{r.bnc_gbps!r},{_fmt(r.runtime_s)},"
            f"{int(r.certified_optimal)},{r.topology_checksum}"
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_raw_records(path):
    records = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != RAW_HEADER:
            raise ValueError(f"{path}: unexpected raw-record header")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            scenario, density, rep, method, anh_s, bnc_s, rt, cert, checksum = line.split(",")
            records.append(
                RawRecord(
                    scenario=scenario,
                    density=int(density),
                    replication=int(rep),
                    method=method,
                    anh=float(anh_s),
                    bnc_gbps=float(bnc_s),
                    runtime_s=float(rt) if rt else None,
                    certified_optimal=cert == "1",
                    topology_checksum=checksum,
                )
            )
    return records


def write_summary(summaries, path):
    lines = [SUMMARY_HEADER]
    for s in summaries:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    s.scenario,
                    s.density,
                    s.method,
                    s.anh_mean,
                    s.anh_ci_low,
                    s.anh_ci_high,
                    s.bnc_mean,
                    s.bnc_ci_low,
                    s.bnc_ci_high,
                    s.runtime_mean,
                    s.runtime_ci,
                    s.gap_vs_exact_pct,
                    s.runtime_saving_pct,
                )
            )
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_series(summaries, out_dir):
    """Plot-ready mean-vs-density series, one file per (metric, scenario),
    one column per method."""
    import os

    by_scenario = {}
    for s in summaries:
        by_scenario.setdefault(s.scenario, []).append(s)
    paths = []
    for scenario, rows in by_scenario.items():
        methods = []
        densities = []
        for r in rows:
            if r.method not in methods:
                methods.append(r.method)
            if r.density not in densities:
                densities.append(r.density)
        values = {(r.density, r.method): r for r in rows}
        for metric, attr in (("anh", "anh_mean"), ("bnc", "bnc_mean")):
            lines = ["density," + ",".join(methods)]
            for d in densities:
                cells = []
                for method in methods:
                    row = values.get((d, method))
                    cells.append(repr(getattr(row, attr)) if row else "")
                lines.append(f"{d}," + ",".join(cells))
            path = os.path.join(out_dir, f"series_{metric}_{scenario}.csv")
            with open(path, "w") as fh:
                fh.write("\n".join(lines) + "\n")
            paths.append(path)
    return paths


def format_summary_table(summaries):
    """Aligned text table of the summary rows."""
    headers = ["scenario", "density", "method", "anh", "anh 95% CI", "bnc", "bnc 95% CI",
               "runtime_s", "gap%", "saving%"]
    rows = []
    for s in summaries:
        rows.append(
            [
                s.scenario,
                str(s.density),
                s.method,
                f"{s.anh_mean:.3f}",
                f"{s.anh_ci_low:.3f}-{s.anh_ci_high:.3f}",
                f"{s.bnc_mean:.2f}",
                f"{s.bnc_ci_low:.2f}-{s.bnc_ci_high:.2f}",
                "" if s.runtime_mean is None else f"{s.runtime_mean:.3f}",
                "" if s.gap_vs_exact_pct is None else f"{s.gap_vs_exact_pct:.2f}",
                "" if s.runtime_saving_pct is None else f"{s.runtime_saving_pct:.2f}",
            ]
        )
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    out = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    for r in rows:
        out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    return "\n".join(out)
