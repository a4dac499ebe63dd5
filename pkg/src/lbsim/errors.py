"""Exception types shared across the package."""


class NoServerAvailable(RuntimeError):
    """No alive server with positive weight can accept the task."""


class AssignToDeadServer(RuntimeError):
    """A task was routed to a server that is not alive."""


class CompleteWithoutAssign(RuntimeError):
    """A completion was reported for a task class with zero active count."""


class InvalidIdleRate(ValueError):
    """CPU or memory idle rate outside the half-open interval (0, 1]."""


class MalformedRecord(ValueError):
    """A telemetry line that does not parse as a record."""


class UnknownServer(ValueError):
    """A telemetry record names a server index outside the fleet."""


class InvalidConfig(ValueError):
    """A scenario configuration that violates its schema or ranges."""


class EmptyInput(ValueError):
    """A statistic was requested over an empty sequence."""


class SingleElement(ValueError):
    """A spread statistic was requested over a single value."""
