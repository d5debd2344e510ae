"""Exception types mapped to CLI exit codes."""


class GridTopoError(Exception):
    """Base class; ``exit_code`` drives the CLI return status."""

    exit_code = 3


class UsageError(GridTopoError):
    """Caller passed invalid arguments or an infeasible configuration."""

    exit_code = 1


class DataError(GridTopoError):
    """Input data violates a precondition (size, finiteness, consistency)."""

    exit_code = 2


class InternalError(GridTopoError):
    """Internal consistency check failed; indicates a bug, not bad input."""

    exit_code = 3
