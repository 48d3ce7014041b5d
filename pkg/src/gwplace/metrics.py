"""Average number of hops (ANH) and backhaul network capacity (BNC)."""

from dataclasses import dataclass

from .errors import DegenerateDenominator

N_MINUS_M = "n_minus_m"
N_MODE = "n"
DENOMINATOR_MODES = (N_MINUS_M, N_MODE)


@dataclass(frozen=True)
class CapacityParams:
    """Link capacities in Gbps: ws per small-cell wireless link, wg per
    gateway fiber link."""

    ws: float = 1.0
    wg: float = 100.0

    def __post_init__(self):
        if not self.wg > self.ws > 0:
            raise ValueError("capacity params must satisfy wg > ws > 0")


@dataclass(frozen=True)
class AnhResult:
    total_hops: int
    anh: float
    denominator_mode: str


@dataclass(frozen=True)
class BncResult:
    capacity: float  # Gbps


def anh(placement, mode: str = N_MINUS_M) -> AnhResult:
    """Average hops from cells to their serving gateways.

    The default divides the hop total by the N - M non-gateway cells (the
    convention used next to the exact solver); mode "n" divides by all N
    cells instead. Gateways contribute zero hops either way.
    """
    if mode not in DENOMINATOR_MODES:
        raise ValueError(f"unknown denominator mode {mode!r}")
    total = placement.total_hops
    n = placement.n
    m = placement.m
    if mode == N_MINUS_M:
        if n == m:
            raise DegenerateDenominator("every cell is a gateway: N - M = 0")
        value = total / (n - m)
    else:
        value = total / n
    return AnhResult(total_hops=total, anh=value, denominator_mode=mode)


def bnc(anh_value: float, n: int, m: int, params: CapacityParams = CapacityParams()) -> BncResult:
    """Backhaul network capacity in Gbps:

        min(N * ws, M * (wg - ws)) / anh + M * ws

    The first term is the deliverable multi-hop throughput, throttled by the
    average hop count; the second is the gateways' own traffic, which rides
    the fiber directly.
    """
    if anh_value == 0:
        raise ZeroDivisionError(
            "ANH of zero (every cell a gateway) makes the capacity model unbounded"
        )
    if anh_value < 0:
        raise ValueError("ANH must be positive")
    capacity = min(n * params.ws, m * (params.wg - params.ws)) / anh_value + m * params.ws
    return BncResult(capacity=capacity)
