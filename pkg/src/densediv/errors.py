"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured time or memory ceiling."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to converge."""
