"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of its step, degree, or size budget.

    Distinct from a negative result: the computation was cut off before it
    could decide.
    """


class VerificationError(RuntimeError):
    """An internal cross-check failed on data that was expected to be valid."""
