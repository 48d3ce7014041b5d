"""Random small-cell topologies over a circular service area.

Three scenarios: uniform over the disc, bivariate Gaussian peaked at the
center, and hotspot clusters on a ring plus a uniform background. Minimum
inter-cell separation is enforced by dart throwing: candidates are redrawn
until far enough from every accepted cell, with a fixed attempt budget per
cell.
"""

import hashlib
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import PlacementExhausted

UNIFORM = "uniform"
GAUSSIAN = "gaussian"
CLUSTER = "cluster"
SCENARIOS = (UNIFORM, GAUSSIAN, CLUSTER)

# Scenario defaults for the global minimum separation (meters).
DEFAULT_SEPARATION = {UNIFORM: 50.0, GAUSSIAN: 40.0, CLUSTER: 50.0}

# Dart-throwing attempt budget per cell.
MAX_ATTEMPTS = 10_000


@dataclass(frozen=True)
class TopologyConfig:
    """Parameters of one topology draw.

    ``density`` is the cell count N in fixed mode, or the Poisson mean when
    ``poisson`` is set. ``min_separation`` of None picks the scenario
    default (uniform 50 m, gaussian 40 m, cluster 50 m for the background
    phase; clustered cells use ``cluster_separation`` within a cluster).
    """

    scenario: str = UNIFORM
    density: int = 310
    area_radius: float = 1000.0
    seed: int = 0
    poisson: bool = False
    min_separation: float | None = None
    gaussian_sigma_fraction: float = 0.40
    cluster_count: int = 6
    cluster_ring_radius: float = 500.0
    cluster_radius: float = 100.0
    cluster_fraction: float = 0.5
    cluster_separation: float = 25.0

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if self.density < 1:
            raise ValueError("density must be >= 1")
        if self.area_radius <= 0:
            raise ValueError("area_radius must be positive")
        if self.gaussian_sigma_fraction <= 0:
            raise ValueError("gaussian_sigma_fraction must be positive")
        if self.cluster_count < 1:
            raise ValueError("cluster_count must be >= 1")
        if not 0 < self.cluster_fraction < 1:
            raise ValueError("cluster_fraction must be in (0, 1)")

    @property
    def separation(self) -> float:
        if self.min_separation is not None:
            return self.min_separation
        return DEFAULT_SEPARATION[self.scenario]


@dataclass
class Topology:
    """Generated cell coordinates plus the config that produced them.

    ``labels[i]`` is the cluster index a cell was drawn in, or -1 for cells
    of the uniform/background phase (all cells in non-cluster scenarios).
    """

    xy: np.ndarray
    config: TopologyConfig
    labels: np.ndarray = field(default=None)
    cluster_centers: np.ndarray | None = None

    def __post_init__(self):
        self.xy = np.asarray(self.xy, dtype=np.float64).reshape(-1, 2)
        if self.labels is None:
            self.labels = np.full(len(self.xy), -1, dtype=np.int32)
        else:
            self.labels = np.asarray(self.labels, dtype=np.int32)

    @property
    def n(self) -> int:
        return self.xy.shape[0]

    def checksum(self) -> str:
        h = hashlib.blake2b(digest_size=8)
        h.update(np.ascontiguousarray(self.xy).tobytes())
        return h.hexdigest()


@dataclass(frozen=True)
class Violation:
    """First constraint violation found by validate_topology."""

    kind: str  # "radius" or "separation"
    cells: tuple
    detail: str

    def __str__(self):
        return self.detail


def draw_node_count(config: TopologyConfig, rng: np.random.Generator) -> int:
    """Cell count for one topology: the density itself in fixed mode, a
    Poisson variate with that mean otherwise."""
    if config.poisson:
        return int(rng.poisson(config.density))
    return config.density


def _disc_point(rng, radius):
    r = radius * np.sqrt(rng.random())
    theta = rng.random() * 2.0 * np.pi
    return r * np.cos(theta), r * np.sin(theta)


def _far_enough(xs, ys, k, x, y, sep):
    if k == 0 or sep <= 0:
        return True
    d2 = (xs[:k] - x) ** 2 + (ys[:k] - y) ** 2
    return bool(d2.min() >= sep * sep)


def generate_uniform(config: TopologyConfig, rng: np.random.Generator, n=None) -> Topology:
    """N cells uniform over the disc, pairwise separation >= config.separation."""
    if n is None:
        n = draw_node_count(config, rng)
    sep = config.separation
    xs = np.empty(n)
    ys = np.empty(n)
    for k in range(n):
        for _ in range(MAX_ATTEMPTS):
            x, y = _disc_point(rng, config.area_radius)
            if _far_enough(xs, ys, k, x, y, sep):
                break
        else:
            raise PlacementExhausted(
                f"could not place cell {k} of {n} with separation {sep} m "
                f"in a {config.area_radius} m disc after {MAX_ATTEMPTS} attempts",
                cell_index=k,
                attempts=MAX_ATTEMPTS,
            )
        xs[k] = x
        ys[k] = y
    topo = Topology(np.column_stack([xs, ys]), config)
    _check_valid(topo)
    return topo


def generate_gaussian(config: TopologyConfig, rng: np.random.Generator, n=None) -> Topology:
    """N cells from a symmetric bivariate normal centered on the area,
    per-axis sigma = gaussian_sigma_fraction * area_radius. Draws landing
    outside the disc are rejected and redrawn."""
    if n is None:
        n = draw_node_count(config, rng)
    sep = config.separation
    sigma = config.gaussian_sigma_fraction * config.area_radius
    r2 = config.area_radius**2
    xs = np.empty(n)
    ys = np.empty(n)
    for k in range(n):
        for _ in range(MAX_ATTEMPTS):
            x = rng.normal(0.0, sigma)
            y = rng.normal(0.0, sigma)
            if x * x + y * y > r2:
                continue
            if _far_enough(xs, ys, k, x, y, sep):
                break
        else:
            raise PlacementExhausted(
                f"could not place cell {k} of {n} with separation {sep} m "
                f"under the Gaussian density after {MAX_ATTEMPTS} attempts",
                cell_index=k,
                attempts=MAX_ATTEMPTS,
            )
        xs[k] = x
        ys[k] = y
    topo = Topology(np.column_stack([xs, ys]), config)
    _check_valid(topo)
    return topo


def ring_points(theta0: float, count: int, radius: float) -> np.ndarray:
    """``count`` points on a circle, evenly spaced starting from theta0."""
    angles = theta0 + np.arange(count) * (2.0 * np.pi / count)
    return np.column_stack([radius * np.cos(angles), radius * np.sin(angles)])


def cluster_centers(config: TopologyConfig, rng: np.random.Generator) -> np.ndarray:
    """Hotspot centers: the first at a uniformly random angle on the
    cluster ring, the rest stepped by 360/cluster_count degrees."""
    theta0 = rng.random() * 2.0 * np.pi
    return ring_points(theta0, config.cluster_count, config.cluster_ring_radius)


def generate_cluster(config: TopologyConfig, rng: np.random.Generator, n=None) -> Topology:
    """Two-phase hotspot topology.

    Phase one draws round(cluster_fraction * N) cells around the cluster
    centers (bivariate normal, per-axis sigma = cluster_radius / 3, redrawn
    beyond cluster_radius or outside the disc), split across clusters by a
    symmetric multinomial so cluster sizes differ. Cells within a cluster
    keep >= cluster_separation apart. Phase two fills the remaining cells
    uniformly over the disc, >= config.separation from every earlier cell.
    """
    if n is None:
        n = draw_node_count(config, rng)
    centers = cluster_centers(config, rng)
    n_clustered = int(round(config.cluster_fraction * n))
    sizes = rng.multinomial(n_clustered, np.full(config.cluster_count, 1.0 / config.cluster_count))
    sigma = config.cluster_radius / 3.0
    r2 = config.area_radius**2
    cr2 = config.cluster_radius**2
    xs = np.empty(n)
    ys = np.empty(n)
    labels = np.empty(n, dtype=np.int32)
    k = 0
    for c in range(config.cluster_count):
        cx, cy = centers[c]
        start = k
        for _ in range(sizes[c]):
            for _ in range(MAX_ATTEMPTS):
                x = cx + rng.normal(0.0, sigma)
                y = cy + rng.normal(0.0, sigma)
                if (x - cx) ** 2 + (y - cy) ** 2 > cr2:
                    continue
                if x * x + y * y > r2:
                    continue
                if _far_enough(xs[start:], ys[start:], k - start, x, y, config.cluster_separation):
                    break
            else:
                raise PlacementExhausted(
                    f"could not place cell {k} of {n} in cluster {c} "
                    f"(separation {config.cluster_separation} m within a "
                    f"{config.cluster_radius} m hotspot) after {MAX_ATTEMPTS} attempts",
                    cell_index=k,
                    attempts=MAX_ATTEMPTS,
                )
            xs[k] = x
            ys[k] = y
            labels[k] = c
            k += 1
    sep = config.separation
    while k < n:
        for _ in range(MAX_ATTEMPTS):
            x, y = _disc_point(rng, config.area_radius)
            if _far_enough(xs, ys, k, x, y, sep):
                break
        else:
            raise PlacementExhausted(
                f"could not place background cell {k} of {n} with separation "
                f"{sep} m after {MAX_ATTEMPTS} attempts",
                cell_index=k,
                attempts=MAX_ATTEMPTS,
            )
        xs[k] = x
        ys[k] = y
        labels[k] = -1
        k += 1
    topo = Topology(np.column_stack([xs, ys]), config, labels=labels, cluster_centers=centers)
    _check_valid(topo)
    return topo


def generate_topology(config: TopologyConfig) -> Topology:
    """Generate and self-validate one topology from config.seed."""
    rng = np.random.default_rng(config.seed)
    if config.scenario == UNIFORM:
        return generate_uniform(config, rng)
    if config.scenario == GAUSSIAN:
        return generate_gaussian(config, rng)
    return generate_cluster(config, rng)


def validate_topology(topo: Topology):
    """Check the radius bound and every applicable separation constraint.

    Separation rules: a background cell (label -1) must keep the scenario's
    global separation from every other cell; two cells of the same cluster
    must keep cluster_separation; cells of different clusters are
    unconstrained (hotspots are disjoint by construction). Returns None when
    everything holds, otherwise a Violation naming the first offending cells.
    """
    cfg = topo.config
    xy = topo.xy
    n = topo.n
    r = np.hypot(xy[:, 0], xy[:, 1])
    outside = np.flatnonzero(r > cfg.area_radius)
    if outside.size:
        i = int(outside[0])
        return Violation(
            "radius",
            (i,),
            f"cell {i} at radius {r[i]:.3f} m exceeds the {cfg.area_radius} m service area",
        )
    if n < 2:
        return None
    diff = xy[:, None, :] - xy[None, :, :]
    d2 = (diff**2).sum(axis=2)
    labels = topo.labels
    background = labels < 0
    pair_floor = np.zeros((n, n))
    either_bg = background[:, None] | background[None, :]
    pair_floor[either_bg] = cfg.separation
    same_cluster = (labels[:, None] == labels[None, :]) & ~background[:, None] & ~background[None, :]
    pair_floor[same_cluster] = cfg.cluster_separation
    np.fill_diagonal(pair_floor, 0.0)
    bad = d2 < pair_floor**2
    if bad.any():
        i, j = np.unravel_index(int(bad.argmax()), bad.shape)
        return Violation(
            "separation",
            (int(i), int(j)),
            f"cells {i} and {j} are {np.sqrt(d2[i, j]):.3f} m apart "
            f"(minimum {pair_floor[i, j]:.0f} m)",
        )
    return None


def _check_valid(topo):
    violation = validate_topology(topo)
    if violation is not None:  # generator bug, not a user error
        raise AssertionError(f"generator produced an invalid topology: {violation}")


def write_topology(topo: Topology, path):
    """Line-oriented text dump: a header comment, then one id,x,y record per
    cell. Cluster topologies also carry their centers and per-cell labels in
    extra header comments so they round-trip."""
    cfg = topo.config
    lines = [f"# radius={cfg.area_radius!r} scenario={cfg.scenario} seed={cfg.seed} n={topo.n}"]
    if topo.cluster_centers is not None:
        for i, (cx, cy) in enumerate(topo.cluster_centers):
            lines.append(f"# cluster_center={i},{float(cx)!r},{float(cy)!r}")
    if (topo.labels >= 0).any():
        lines.append("# labels=" + ",".join(str(int(v)) for v in topo.labels))
    for i, (x, y) in enumerate(topo.xy):
        lines.append(f"{i},{float(x)!r},{float(y)!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_topology(path) -> Topology:
    """Parse a topology file written by write_topology (or by hand)."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError(f"{path}: missing topology header line")
    header = {}
    for token in lines[0].lstrip("#").split():
        key, _, value = token.partition("=")
        header[key] = value
    for key in ("radius", "scenario", "seed", "n"):
        if key not in header:
            raise ValueError(f"{path}: header missing {key}=")
    centers = []
    labels = None
    records = []
    for ln in lines[1:]:
        if ln.startswith("#"):
            body = ln.lstrip("# ").strip()
            if body.startswith("cluster_center="):
                _, cx, cy = body.split("=", 1)[1].split(",")
                centers.append((float(cx), float(cy)))
            elif body.startswith("labels="):
                labels = np.array([int(v) for v in body.split("=", 1)[1].split(",")], dtype=np.int32)
            continue
        ident, x, y = ln.split(",")
        records.append((int(ident), float(x), float(y)))
    records.sort()
    n = int(header["n"])
    if len(records) != n:
        raise ValueError(f"{path}: header says n={n} but found {len(records)} records")
    xy = np.array([(x, y) for _, x, y in records], dtype=np.float64)
    config = TopologyConfig(
        scenario=header["scenario"],
        density=max(n, 1),
        area_radius=float(header["radius"]),
        seed=int(header["seed"]),
    )
    return Topology(
        xy,
        config,
        labels=labels,
        cluster_centers=np.array(centers) if centers else None,
    )


def scaled(topo: Topology, factor: float) -> Topology:
    """Copy of a topology with all coordinates (and length-typed config
    fields) multiplied by factor. Used by scale-invariance tests."""
    cfg = topo.config
    new_cfg = replace(
        cfg,
        area_radius=cfg.area_radius * factor,
        min_separation=cfg.separation * factor,
        cluster_ring_radius=cfg.cluster_ring_radius * factor,
        cluster_radius=cfg.cluster_radius * factor,
        cluster_separation=cfg.cluster_separation * factor,
    )
    centers = None if topo.cluster_centers is None else topo.cluster_centers * factor
    return Topology(topo.xy * factor, new_cfg, labels=topo.labels.copy(), cluster_centers=centers)
