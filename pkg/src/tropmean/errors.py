"""Exception types shared across the package."""


class TropmeanError(Exception):
    """Base class for all package-specific errors."""


class ParseError(TropmeanError):
    """Raised when an input document (JSON, CSV, rational literal) is malformed."""


class EmptyPolytrope(TropmeanError):
    """Raised when a constraint matrix describes an empty region.

    Detected during max-plus closure: a strictly positive diagonal entry
    means some cyclic chain of constraints forces x_i - x_i > 0.
    """


class Unbounded(TropmeanError):
    """Raised when an operation requires a bounded polytrope but the
    closure contains -inf entries, i.e. some difference x_i - x_j is
    unconstrained below."""


class NotOptimal(TropmeanError):
    """Raised when no positivity certificate exists at the queried point,
    i.e. the point is not a minimizer of the summed squared distances."""


class BudgetExceeded(TropmeanError):
    """Raised when an exhaustive computation would exceed its configured
    work budget."""
