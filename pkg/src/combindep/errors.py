"""Exception types shared across the package."""


class CombindepError(Exception):
    """Base class for all package errors."""


class HorizonError(CombindepError):
    """A query needs a window larger than an oracle can answer exactly."""

    def __init__(self, requested, horizon, what="window"):
        self.requested = requested
        self.horizon = horizon
        super().__init__(f"horizon exceeded: {what} of length {requested} > horizon {horizon}")


class BudgetError(CombindepError):
    """An exact search would exceed its configured budget."""


class InvariantError(CombindepError):
    """An internal consistency check failed. Never expected."""


class FormatError(CombindepError, ValueError):
    """A serialized document is malformed or has an unknown version."""
