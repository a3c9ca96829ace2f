"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI reports for it.
"""


class PartitionError(Exception):
    exit_code = 1


class ValidationError(PartitionError, ValueError):
    exit_code = 2


class TableTooSmall(ValidationError):
    """A count table was asked for a value beyond its limit."""


class GridMismatch(ValidationError):
    pass


class ResourceCapExceeded(PartitionError):
    exit_code = 3


class EnumerationCapExceeded(ResourceCapExceeded):
    pass


class RetryLimitExceeded(ResourceCapExceeded):
    """Rejection sampler gave up; ``trials`` and ``accepted`` are kept for diagnostics."""

    def __init__(self, message, trials=0, accepted=0):
        super().__init__(message)
        self.trials = trials
        self.accepted = accepted

    @property
    def acceptance_rate(self):
        return self.accepted / self.trials if self.trials else 0.0


class BracketError(PartitionError, ArithmeticError):
    pass
