"""Shared exception types.

PreconditionError: the caller asked for something outside an operation's
stated domain (bad bounds, wrong grading, order too high).  CLI exit code 2.

InconsistencyError: an internal cross-check failed or a guaranteed search
exhausted its budget.  CLI exit code 3.
"""


class PreconditionError(ValueError):
    pass


class InconsistencyError(RuntimeError):
    pass


class StabilizationError(InconsistencyError):
    """No stabilization threshold within the allotted sweep."""
