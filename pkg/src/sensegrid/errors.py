"""Exception hierarchy shared across the package."""


class SenseGridError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SenseGridError):
    """Invalid scenario configuration; message carries the offending field path."""


class OverrideError(ConfigError):
    """Coordinator override names a node that is not a member of the grid."""


class WrongDatabaseError(SenseGridError):
    """Reading ingested into a database of a different sensor type."""


class QueryError(SenseGridError):
    """Malformed centric query."""


class WorkloadError(SenseGridError):
    """Workload references unknown sensors or ticks outside the scenario."""


class RoutingError(SenseGridError):
    """Request routing over sensors the grid set does not cover."""
