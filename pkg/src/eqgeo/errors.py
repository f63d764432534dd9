"""Exception types shared across the package."""


class EqgeoError(Exception):
    """Base class for all package errors."""


class ArityError(EqgeoError, ValueError):
    """Variable index or tuple length incompatible with the declared arity."""


class ValidationError(EqgeoError, ValueError):
    """Structural input rejected: bad table, bad action, bad file, ..."""


class SubstitutionError(EqgeoError, ValueError):
    """A variable occurring in a word has no replacement assigned."""


class ParseError(EqgeoError, ValueError):
    """Word text could not be parsed; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BudgetExceeded(EqgeoError, RuntimeError):
    """An exhaustive search hit its configured state budget.

    Never downgraded to an approximation: callers must either raise the
    budget or treat the computation as unavailable.
    """

    def __init__(self, budget: int, context: str = ""):
        msg = f"closure budget of {budget} states exceeded"
        if context:
            msg += f" ({context})"
        super().__init__(msg)
        self.budget = budget


class UndecidedError(EqgeoError, RuntimeError):
    """No exact decision method exists for this backend."""
