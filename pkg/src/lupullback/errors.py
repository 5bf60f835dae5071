"""Exception hierarchy shared by all modules."""


class LupullbackError(Exception):
    """Base class for errors raised by this package."""


class ShapeError(LupullbackError, ValueError):
    """Array dimensions do not fit the operation."""


class DomainError(LupullbackError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ContractViolation(LupullbackError, ValueError):
    """An input breaks a stated precondition (e.g. a non-Hermitian matrix)."""


class ConsistencyError(LupullbackError, RuntimeError):
    """Two independent evaluations of the same quantity disagree."""
