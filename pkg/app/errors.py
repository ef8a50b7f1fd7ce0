"""Error hierarchy shared by the services, the HTTP routes and the CLI.

Every error carries the CLI exit code and the HTTP status it maps to, so the
two outer surfaces never need their own translation tables.
"""


class RootNumberError(ValueError):
    exit_code = 2
    status_code = 400


class InputValidationError(RootNumberError):
    """Malformed input or input outside an operation's domain."""


class OutOfScopeError(RootNumberError):
    """Input the underlying theorems do not address (e.g. odd N in prediction)."""


class InconclusiveError(RootNumberError):
    """A residue-ring oracle cannot certify its answer at the given truncation."""

    exit_code = 3
    status_code = 422


class BudgetExceededError(RootNumberError):
    """An exhaustive enumeration would exceed its configured budget."""

    exit_code = 3
    status_code = 422
