"""Exception hierarchy shared by every resurgia module."""


class ResurgiaError(ValueError):
    """Invalid input or an operation applied outside its domain."""


class BudgetExceeded(RuntimeError):
    """A computation grew past a configured size ceiling."""
