"""Exception types shared across the package."""


class GwplaceError(Exception):
    """Base class for all domain errors raised by this package."""


class PlacementExhausted(GwplaceError):
    """Dart-throwing could not place a cell within the attempt budget.

    Raised by the topology generators when the requested density is
    infeasible for the configured minimum separation.
    """

    def __init__(self, message, cell_index=None, attempts=None):
        super().__init__(message)
        self.cell_index = cell_index
        self.attempts = attempts


class NotConnected(GwplaceError):
    """An operation that requires a single connected component got a graph
    with unreachable cell pairs."""


class BudgetExceeded(GwplaceError):
    """The exact solver hit its node-expansion budget before finding any
    complete incumbent (budget smaller than the solution depth)."""


class DegenerateDenominator(GwplaceError):
    """Average-hop computation with N == M under the N-minus-M denominator."""


class TooFewSamples(GwplaceError):
    """Confidence interval requested for fewer than two samples."""
