"""Command-line front end.

Subcommands: gen (topology file), place (one placer on one topology), eval
(re-check a placement file), experiment (full Monte Carlo grid), report
(summaries from an existing raw-record file). Exit codes: 0 success, 1 usage
error, 2 runtime failure. Every run echoes its fully resolved configuration
to stderr as "# key=value" lines so outputs are reproducible from the log.

The default seed is 0 and can be overridden with the GWPLACE_SEED
environment variable; an explicit --seed wins over both.
"""

import argparse
import os
import sys
import time

import numpy as np

from . import _kernels as kernels
from .errors import GwplaceError
from .graph import build_graph, hop_matrix, is_fully_connected, write_edge_list
from .harness import (
    ExperimentConfig,
    ExperimentFailure,
    format_summary_table,
    read_raw_records,
    run_experiment,
    summarize,
    write_raw_records,
    write_series,
    write_summary,
)
from .metrics import DENOMINATOR_MODES, N_MINUS_M, CapacityParams, anh, bnc
from .placement import read_placement, write_placement
from .placers import METHODS, GaConfig, KgaConfig, MethodSettings, run_method
from .topology import (
    SCENARIOS,
    TopologyConfig,
    generate_topology,
    read_topology,
    validate_topology,
    write_topology,
)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _default_seed():
    return int(os.environ.get("GWPLACE_SEED", "0"))


def _echo(pairs):
    for key, value in pairs:
        print(f"# {key}={value}", file=sys.stderr)


def _echo_backend():
    _echo([("kernel_backend", kernels.BACKEND)])


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


# ---------------------------------------------------------------- gen


def _cmd_gen(args):
    config = TopologyConfig(
        scenario=args.scenario,
        density=args.density,
        area_radius=args.radius,
        seed=args.seed,
        poisson=args.poisson,
        min_separation=args.min_sep,
        gaussian_sigma_fraction=args.sigma_fraction,
        cluster_count=args.clusters,
        cluster_ring_radius=args.cluster_ring,
        cluster_radius=args.cluster_radius,
        cluster_fraction=args.cluster_fraction,
        cluster_separation=args.cluster_sep,
    )
    _echo_backend()
    _echo([(f, getattr(config, f)) for f in config.__dataclass_fields__])
    topo = generate_topology(config)
    write_topology(topo, args.out)
    g = build_graph(topo, args.range)
    if args.edges_out:
        write_edge_list(g, args.edges_out)
    connected = is_fully_connected(g)
    separation_ok = validate_topology(topo) is None
    print(
        f"n={topo.n} connected={'yes' if connected else 'no'} "
        f"separation={'ok' if separation_ok else 'violated'} file={args.out}"
    )
    return 0


# ---------------------------------------------------------------- place


def _settings_from_args(args):
    ga_gens = args.generations if args.generations is not None else 100
    hybrid_gens = args.kga_generations
    kga = KgaConfig(
        t=args.t,
        replications=args.kga_replications,
        generations=hybrid_gens,
        mutation_prob=args.mutation,
    )
    return MethodSettings(
        kmeans_replications=args.replications,
        kmedoids_replications=args.replications,
        ga=GaConfig(
            population_size=args.population,
            generations=ga_gens,
            mutation_prob=args.mutation,
        ),
        kga=kga,
        kmga=kga,
        exact_budget=args.budget,
    )


def _load_topology(path):
    try:
        return read_topology(path)
    except OSError as exc:
        raise GwplaceError(f"cannot read topology file: {exc}") from exc


def _cmd_place(args):
    topo = _load_topology(args.infile)
    g = build_graph(topo, args.range)
    if not is_fully_connected(g):
        raise GwplaceError(f"{args.infile}: connectivity graph is not fully connected")
    settings = _settings_from_args(args)
    _echo_backend()
    _echo(
        [
            ("in", args.infile),
            ("method", args.method),
            ("m", args.m),
            ("seed", args.seed),
            ("range", args.range),
            ("denominator", args.denominator),
            ("ws", args.ws),
            ("wg", args.wg),
            ("settings", settings),
        ]
    )
    rng = np.random.default_rng(args.seed)
    hop_matrix(g)  # shared distance input, excluded from the reported runtime
    start = time.perf_counter()
    result = run_method(args.method, topo, g, args.m, rng, settings)
    elapsed = time.perf_counter() - start
    anh_value = anh(result.placement, args.denominator).anh
    bnc_value = bnc(anh_value, topo.n, args.m, CapacityParams(args.ws, args.wg)).capacity
    if args.out:
        write_placement(result.placement, anh_value, args.method, args.out)
    print(f"{args.method},{anh_value!r},{bnc_value!r},{elapsed:.6f}")
    return 0


# ---------------------------------------------------------------- eval


def _cmd_eval(args):
    topo = _load_topology(args.topology)
    placement, method, stored_anh = read_placement(args.placement)
    if placement.n != topo.n:
        raise GwplaceError(
            f"placement has {placement.n} cells but topology has {topo.n}"
        )
    g = build_graph(topo, args.range)
    if not is_fully_connected(g):
        raise GwplaceError(f"{args.topology}: connectivity graph is not fully connected")
    _echo_backend()
    _echo([("topology", args.topology), ("placement", args.placement), ("range", args.range)])
    D = hop_matrix(g)
    gws = placement.gateways
    best = D[:, gws].min(axis=1)
    if not (placement.hops == best).all():
        bad = int(np.flatnonzero(placement.hops != best)[0])
        raise GwplaceError(
            f"stored hops for cell {bad} ({placement.hops[bad]}) do not match "
            f"the fewest-hop distance ({best[bad]})"
        )
    chosen = D[np.arange(topo.n), placement.assignment]
    if not (chosen == best).all():
        bad = int(np.flatnonzero(chosen != best)[0])
        raise GwplaceError(f"cell {bad} is not assigned to a fewest-hop gateway")
    anh_value = float(best.sum() / ((topo.n - placement.m) if args.denominator == N_MINUS_M else topo.n))
    bnc_value = bnc(anh_value, topo.n, placement.m, CapacityParams(args.ws, args.wg)).capacity
    print(f"{method or 'placement'},{anh_value!r},{bnc_value!r}")
    return 0


# ---------------------------------------------------------------- experiment


_CONFIG_KEYS = {
    "scenarios",
    "densities",
    "methods",
    "m",
    "replications",
    "seed",
    "radius",
    "range",
    "jobs",
    "timing",
    "denominator",
    "ws",
    "wg",
    "poisson",
    "kmeans_replications",
    "kmedoids_replications",
    "ga_population",
    "ga_generations",
    "kga_t",
    "kga_replications",
    "kga_generations",
    "mutation_prob",
    "exact_budget",
    "sigma_fraction",
    "cluster_count",
    "cluster_ring",
    "cluster_radius",
    "cluster_fraction",
    "min_separation",
    "cluster_separation",
    "out_dir",
}


def parse_config_file(path):
    """Flat key=value lines; # starts a comment; lists are comma-separated."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = value.strip()
    return values


def _bool_key(text):
    if text.lower() in ("1", "true", "on", "yes"):
        return True
    if text.lower() in ("0", "false", "off", "no"):
        return False
    raise ValueError(f"expected on/off value, got {text!r}")


def _build_experiment_config(args):
    file_values = parse_config_file(args.config) if args.config else {}

    def pick(flag_value, key, cast, default):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            return cast(file_values[key])
        return default

    csv = lambda text: tuple(v.strip() for v in text.split(",") if v.strip())
    int_csv = lambda text: tuple(int(v) for v in csv(text))

    scenarios = pick(csv(args.scenarios) if args.scenarios else None, "scenarios", csv, ("uniform",))
    densities = pick(
        tuple(args.densities) if args.densities else None, "densities", int_csv, (310, 350, 390, 430, 470)
    )
    methods = pick(
        csv(args.methods) if args.methods else None,
        "methods",
        csv,
        ("baseline", "kmeans", "kmedoids", "ga", "kga", "kmga"),
    )
    timing = pick(False if args.no_timing else None, "timing", _bool_key, True)
    if args.no_timing:
        timing = False
    generations = pick(args.kga_generations, "kga_generations", int, 50)
    kga = KgaConfig(
        t=pick(args.t, "kga_t", int, 4),
        replications=pick(args.kga_replications, "kga_replications", int, 50),
        generations=generations,
        mutation_prob=pick(args.mutation, "mutation_prob", float, 0.01),
    )
    settings = MethodSettings(
        kmeans_replications=pick(args.kmeans_replications, "kmeans_replications", int, 100),
        kmedoids_replications=pick(args.kmedoids_replications, "kmedoids_replications", int, 100),
        ga=GaConfig(
            population_size=pick(args.population, "ga_population", int, 300),
            generations=pick(args.generations, "ga_generations", int, 100),
            mutation_prob=pick(args.mutation, "mutation_prob", float, 0.01),
        ),
        kga=kga,
        kmga=kga,
        exact_budget=pick(args.budget, "exact_budget", int, 10**9),
    )
    cfg = ExperimentConfig(
        scenarios=scenarios,
        densities=densities,
        methods=methods,
        m=pick(args.m, "m", int, 4),
        replications=pick(args.replications_count, "replications", int, 100),
        seed=pick(args.seed, "seed", int, _default_seed()),
        area_radius=pick(args.radius, "radius", float, 1000.0),
        transmission_range=pick(args.range, "range", float, 200.0),
        poisson=pick(True if args.poisson else None, "poisson", _bool_key, False),
        denominator=pick(args.denominator, "denominator", str, N_MINUS_M),
        capacity=CapacityParams(
            ws=pick(args.ws, "ws", float, 1.0), wg=pick(args.wg, "wg", float, 100.0)
        ),
        settings=settings,
        record_runtime=timing,
        jobs=pick(args.jobs, "jobs", int, os.cpu_count() or 1),
        min_separation=pick(args.min_sep, "min_separation", float, None),
        gaussian_sigma_fraction=pick(args.sigma_fraction, "sigma_fraction", float, 0.40),
        cluster_count=pick(args.clusters, "cluster_count", int, 6),
        cluster_ring_radius=pick(args.cluster_ring, "cluster_ring", float, 500.0),
        cluster_radius=pick(args.cluster_radius, "cluster_radius", float, 100.0),
        cluster_fraction=pick(args.cluster_fraction, "cluster_fraction", float, 0.5),
        cluster_separation=pick(args.cluster_sep, "cluster_separation", float, 25.0),
    )
    out_dir = args.out_dir or file_values.get("out_dir", "results")
    return cfg, out_dir


def _echo_experiment(cfg, out_dir):
    _echo_backend()
    pairs = [(name, getattr(cfg, name)) for name in cfg.__dataclass_fields__]
    pairs.append(("out_dir", out_dir))
    pairs.append(
        ("seed_schedule", "blake2b64(master|scenario|density|replication|method)")
    )
    _echo(pairs)


def _write_outputs(records, summaries, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    write_raw_records(records, os.path.join(out_dir, "raw_records.csv"))
    write_summary(summaries, os.path.join(out_dir, "summary.csv"))
    write_series(summaries, out_dir)


def _cmd_experiment(args):
    cfg, out_dir = _build_experiment_config(args)
    cfg.validate()
    _echo_experiment(cfg, out_dir)
    try:
        records, summaries = run_experiment(cfg)
    except ExperimentFailure as exc:
        if exc.partial_records:
            _write_outputs(exc.partial_records, summarize(exc.partial_records), out_dir)
            print(f"# partial outputs preserved in {out_dir}", file=sys.stderr)
        raise
    _write_outputs(records, summaries, out_dir)
    print(format_summary_table(summaries))
    return 0


# ---------------------------------------------------------------- report


def _cmd_report(args):
    try:
        records = read_raw_records(args.raw)
    except OSError as exc:
        raise GwplaceError(f"cannot read raw records: {exc}") from exc
    summaries = summarize(records)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        write_summary(summaries, os.path.join(args.out_dir, "summary.csv"))
        write_series(summaries, args.out_dir)
    print(format_summary_table(summaries))
    return 0


# ---------------------------------------------------------------- parser


def build_parser():
    parser = _Parser(prog="gwplace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a topology file")
    gen.add_argument("--scenario", required=True, choices=SCENARIOS)
    gen.add_argument("--density", required=True, type=_positive_int)
    gen.add_argument("--seed", type=int, default=_default_seed())
    gen.add_argument("--radius", type=float, default=1000.0)
    gen.add_argument("--range", type=float, default=200.0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--poisson", action="store_true")
    gen.add_argument("--min-sep", dest="min_sep", type=float, default=None)
    gen.add_argument("--sigma-fraction", dest="sigma_fraction", type=float, default=0.40)
    gen.add_argument("--clusters", type=_positive_int, default=6)
    gen.add_argument("--cluster-ring", dest="cluster_ring", type=float, default=500.0)
    gen.add_argument("--cluster-radius", dest="cluster_radius", type=float, default=100.0)
    gen.add_argument("--cluster-fraction", dest="cluster_fraction", type=float, default=0.5)
    gen.add_argument("--cluster-sep", dest="cluster_sep", type=float, default=25.0)
    gen.add_argument("--edges-out", dest="edges_out", default=None,
                     help="also dump the connectivity graph as a sorted i,j edge list")
    gen.set_defaults(func=_cmd_gen)

    def add_method_flags(p):
        p.add_argument("--replications", type=_positive_int, default=100,
                       help="clustering restarts for kmeans/kmedoids")
        p.add_argument("--population", type=_positive_int, default=300)
        p.add_argument("--generations", type=_positive_int, default=None,
                       help="standalone GA generations (default 100)")
        p.add_argument("--t", type=_positive_int, default=4)
        p.add_argument("--kga-replications", dest="kga_replications", type=_positive_int, default=50)
        p.add_argument("--kga-generations", dest="kga_generations", type=_positive_int, default=50)
        p.add_argument("--mutation", type=float, default=0.01)
        p.add_argument("--budget", type=_positive_int, default=10**9)

    place = sub.add_parser("place", help="run one placement method on a topology file")
    place.add_argument("--in", dest="infile", required=True)
    place.add_argument("--method", required=True, choices=METHODS)
    place.add_argument("--m", type=_positive_int, default=4)
    place.add_argument("--seed", type=int, default=_default_seed())
    place.add_argument("--range", type=float, default=200.0)
    place.add_argument("--out", default=None)
    place.add_argument("--denominator", choices=DENOMINATOR_MODES, default=N_MINUS_M)
    place.add_argument("--ws", type=float, default=1.0)
    place.add_argument("--wg", type=float, default=100.0)
    add_method_flags(place)
    place.set_defaults(func=_cmd_place)

    ev = sub.add_parser("eval", help="re-check a placement file against its topology")
    ev.add_argument("--topology", required=True)
    ev.add_argument("--placement", required=True)
    ev.add_argument("--range", type=float, default=200.0)
    ev.add_argument("--denominator", choices=DENOMINATOR_MODES, default=N_MINUS_M)
    ev.add_argument("--ws", type=float, default=1.0)
    ev.add_argument("--wg", type=float, default=100.0)
    ev.set_defaults(func=_cmd_eval)

    exp = sub.add_parser("experiment", help="run a Monte Carlo experiment grid")
    exp.add_argument("--config", default=None, help="key=value config file")
    exp.add_argument("--scenarios", default=None, help="comma-separated scenario names")
    exp.add_argument("--densities", type=int, nargs="+", default=None)
    exp.add_argument("--methods", default=None, help="comma-separated method names")
    exp.add_argument("--m", type=int, default=None)
    exp.add_argument("--replications", dest="replications_count", type=int, default=None)
    exp.add_argument("--seed", type=int, default=None)
    exp.add_argument("--radius", type=float, default=None)
    exp.add_argument("--range", type=float, default=None)
    exp.add_argument("--jobs", type=int, default=None)
    exp.add_argument("--out-dir", dest="out_dir", default=None)
    exp.add_argument("--no-timing", dest="no_timing", action="store_true",
                     help="omit wall-clock runtimes so output files are byte-reproducible")
    exp.add_argument("--denominator", choices=DENOMINATOR_MODES, default=None)
    exp.add_argument("--ws", type=float, default=None)
    exp.add_argument("--wg", type=float, default=None)
    exp.add_argument("--poisson", action="store_true")
    exp.add_argument("--min-sep", dest="min_sep", type=float, default=None)
    exp.add_argument("--sigma-fraction", dest="sigma_fraction", type=float, default=None)
    exp.add_argument("--clusters", type=int, default=None)
    exp.add_argument("--cluster-ring", dest="cluster_ring", type=float, default=None)
    exp.add_argument("--cluster-radius", dest="cluster_radius", type=float, default=None)
    exp.add_argument("--cluster-fraction", dest="cluster_fraction", type=float, default=None)
    exp.add_argument("--cluster-sep", dest="cluster_sep", type=float, default=None)
    exp.add_argument("--kmeans-replications", dest="kmeans_replications", type=int, default=None)
    exp.add_argument("--kmedoids-replications", dest="kmedoids_replications", type=int, default=None)
    exp.add_argument("--population", type=int, default=None)
    exp.add_argument("--generations", type=int, default=None)
    exp.add_argument("--t", type=int, default=None)
    exp.add_argument("--kga-replications", dest="kga_replications", type=int, default=None)
    exp.add_argument("--kga-generations", dest="kga_generations", type=int, default=None)
    exp.add_argument("--mutation", type=float, default=None)
    exp.add_argument("--budget", type=int, default=None)
    exp.set_defaults(func=_cmd_experiment)

    rep = sub.add_parser("report", help="summary table from a raw-record file")
    rep.add_argument("--raw", required=True)
    rep.add_argument("--out-dir", dest="out_dir", default=None)
    rep.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"gwplace: error: {exc}", file=sys.stderr)
        return 1
    except (GwplaceError, OSError) as exc:
        print(f"gwplace: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
