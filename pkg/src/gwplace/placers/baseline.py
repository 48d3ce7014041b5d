"""Fixed-location baseline placement.

Uniform and Gaussian scenarios anchor gateways at fixed points on a 500 m
circle; the m = 4 default uses the coordinates (294, 405), (-294, 405),
(-294, -405), (294, -405). Anchor points need not coincide with cells, so
each anchor snaps to its nearest cell (duplicates promote to next-nearest).
Cluster scenarios anchor on hotspot centers instead: with the default six
clusters and four gateways, clusters 2, 3, 5 and 6 in generation order.
"""

import math

import numpy as np

from ..graph import assign_to_gateways
from ..topology import CLUSTER, ring_points
from .clustering import snap_to_cells

RING_RADIUS = 500.0
REFERENCE_AREA_RADIUS = 1000.0
FOUR_ANCHORS = np.array(
    [(294.0, 405.0), (-294.0, 405.0), (-294.0, -405.0), (294.0, -405.0)]
)
# Designated hotspot anchors (0-based) for the 6-cluster, 4-gateway default.
CLUSTER_PICKS_6_4 = (1, 2, 4, 5)


def baseline_anchors(m, area_radius=REFERENCE_AREA_RADIUS):
    """Anchor coordinates for the non-cluster scenarios: the four fixed
    points for m = 4, otherwise m points equally spaced on the 500 m circle
    starting at the first-quadrant fixed point. On non-reference service
    areas the whole anchor layout scales with the area radius, so desk-scale
    runs keep the anchors at the same relative positions."""
    scale = area_radius / REFERENCE_AREA_RADIUS
    if m == 4:
        return FOUR_ANCHORS * scale
    theta0 = math.atan2(FOUR_ANCHORS[0, 1], FOUR_ANCHORS[0, 0])
    return ring_points(theta0, m, RING_RADIUS * scale)


def baseline_place(topo, g, m=4):
    cfg = topo.config
    if cfg.scenario == CLUSTER:
        centers = topo.cluster_centers
        if centers is None:
            raise ValueError(
                "cluster-scenario baseline needs the hotspot centers; "
                "the topology file has no cluster_center records"
            )
        count = len(centers)
        if m > count:
            raise ValueError(f"baseline needs m <= cluster count ({m} > {count})")
        if count == 6 and m == 4:
            anchors = centers[list(CLUSTER_PICKS_6_4)]
        else:
            anchors = centers[:m]
    else:
        anchors = baseline_anchors(m, cfg.area_radius)
    return assign_to_gateways(g, snap_to_cells(topo.xy, anchors))
