"""Exception types shared across the package."""


class H1SolveError(Exception):
    """Base class for package errors."""


class DomainError(H1SolveError, ValueError):
    """An argument lies outside the domain where an expression is defined."""


class ModelError(H1SolveError, ValueError):
    """Model parameters violate a construction invariant."""


class InternalError(H1SolveError, RuntimeError):
    """An invariant that valid inputs guarantee was breached."""


class ConvergenceError(H1SolveError, RuntimeError):
    """A numerical procedure failed to reach its tolerance."""
