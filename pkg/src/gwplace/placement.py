"""Gateway placement result shared by every placer."""

from dataclasses import dataclass

import numpy as np


@dataclass
class Placement:
    """A set of gateway cells plus each cell's serving gateway and hop count."""

    gateways: np.ndarray  # (m,) sorted distinct cell ids
    assignment: np.ndarray  # (n,) serving gateway id per cell
    hops: np.ndarray  # (n,) fewest hops to the serving gateway

    @property
    def m(self) -> int:
        return len(self.gateways)

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def total_hops(self) -> int:
        return int(self.hops.sum())

    def gateway_set(self) -> set:
        return set(int(v) for v in self.gateways)


def check_placement(placement: Placement, hop_matrix: np.ndarray):
    """Raise AssertionError unless the placement invariants hold against the
    given all-pairs hop matrix: gateways distinct and self-served at zero
    hops, every cell served by a fewest-hop gateway, stored hops exact."""
    gws = placement.gateways
    assert len(set(gws.tolist())) == placement.m, "duplicate gateways"
    for gw in gws:
        assert placement.assignment[gw] == gw, f"gateway {gw} not self-assigned"
        assert placement.hops[gw] == 0, f"gateway {gw} has nonzero hops"
    best = hop_matrix[:, gws].min(axis=1)
    assert (placement.hops == best).all(), "stored hops are not fewest-hop distances"
    chosen = hop_matrix[np.arange(placement.n), placement.assignment]
    assert (chosen == best).all(), "assignment does not achieve the minimum"


def write_placement(placement: Placement, anh_value: float, method: str, path):
    """Placement dump: a header comment, then cell_id,gateway_id,hops rows."""
    lines = [f"# method={method} m={placement.m} anh={anh_value!r}"]
    for i in range(placement.n):
        lines.append(f"{i},{int(placement.assignment[i])},{int(placement.hops[i])}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_placement(path):
    """Parse a placement dump; returns (Placement, method, anh)."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError(f"{path}: missing placement header line")
    header = {}
    for token in lines[0].lstrip("#").split():
        key, _, value = token.partition("=")
        header[key] = value
    rows = []
    for ln in lines[1:]:
        if ln.startswith("#"):
            continue
        cell, gw, hops = ln.split(",")
        rows.append((int(cell), int(gw), int(hops)))
    rows.sort()
    assignment = np.array([gw for _, gw, _ in rows], dtype=np.int32)
    hops = np.array([h for _, _, h in rows], dtype=np.int32)
    gateways = np.unique(assignment[hops == 0])
    placement = Placement(gateways=gateways.astype(np.int32), assignment=assignment, hops=hops)
    return placement, header.get("method", ""), float(header.get("anh", "nan"))
