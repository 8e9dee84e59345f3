"""Exception hierarchy shared by the library, the service, and the CLI.

Every error carries a ``kind`` used to map failures onto service error
payloads and CLI exit codes: ``usage`` -> 1, ``data`` -> 2, ``numerics`` -> 3.
"""


class InflucastError(Exception):
    kind = "data"


class GraphConstructionError(InflucastError):
    """Invalid edge list: self-loop, out-of-range id, bad weight, duplicate."""


class NoSuchEdgeError(InflucastError):
    """Queried pair is not an edge of the graph."""


class EmptyGraphError(InflucastError):
    """Operation requires at least one node."""


class SeedSelectionError(InflucastError):
    """Seed-set request cannot be satisfied (k too large, shortfall, ...)."""


class SimulationError(InflucastError):
    """Invalid contagion run (empty seed set, bad horizon, ...)."""


class DataFormatError(InflucastError):
    """Malformed edge-list file; message carries the offending line number."""


class UnknownNameError(InflucastError):
    """Name not present in the metric / centrality / algorithm registries."""

    kind = "usage"


class ConfigError(InflucastError):
    """Invalid experiment configuration."""

    kind = "usage"


class ConvergenceError(InflucastError):
    """Iterative solver did not reach tolerance; carries the last iterate."""

    kind = "numerics"

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate
