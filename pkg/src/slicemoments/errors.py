"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A distribution or operation parameter violates its constraints."""


class MomentsUndefinedError(ValueError):
    """Requested moments do not exist for the given distribution."""


class SolverError(RuntimeError):
    """A numerical solver failed to converge within its iteration cap."""
