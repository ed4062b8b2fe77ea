"""Exception hierarchy shared by every module."""


class WorkbenchError(Exception):
    """Base class for all errors raised by wfbench."""


class StructuralError(WorkbenchError, ValueError):
    """Malformed distance data or instance file."""


class PreconditionError(WorkbenchError, ValueError):
    """An operation was called with arguments outside its domain."""


class ConsistencyError(WorkbenchError, RuntimeError):
    """A table lookup failed that should be impossible for a total table."""


class ResourceLimitError(WorkbenchError, RuntimeError):
    """An enumeration would exceed its configured size guard."""
