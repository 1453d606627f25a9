"""Exception types shared across the library."""


class ParetoLabError(Exception):
    """Base class for all library-specific errors."""


class DimensionError(ParetoLabError, ValueError):
    """Objective vectors of mismatched or invalid dimension."""


class DomainError(ParetoLabError, ValueError):
    """A parameter is outside its documented domain."""


class CapacityError(ParetoLabError, ValueError):
    """An exhaustive computation was requested beyond its size guard."""


class MalformedInstanceError(ParetoLabError, ValueError):
    """An instance file failed structural or semantic validation."""
