"""Exceptions shared across the solver."""


class InternalInvariantBroken(RuntimeError):
    """A self-check failed; this indicates a bug, not bad input."""


class LimitExceeded(ValueError):
    """An exhaustive routine was asked to run beyond its configured size limit."""

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(f"{what} is {size}, above the exhaustive limit of {limit}")
        self.what = what
        self.size = size
        self.limit = limit
