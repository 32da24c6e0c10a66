"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the domain where a quantity is defined."""


class ConvergenceError(RuntimeError):
    """A numerical procedure failed to reach its tolerance."""


class BudgetExceeded(ConvergenceError):
    """Rejection sampling ran out of tries."""

    def __init__(self, tries: int, accepted: int = 0):
        super().__init__(f"max_tries exceeded after {tries} tries ({accepted} accepted)")
        self.tries = tries
        self.accepted = accepted
