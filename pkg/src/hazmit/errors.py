"""Exception hierarchy shared across hazmit modules."""


class HazmitError(Exception):
    """Base class for all hazmit errors."""


class IdentifierError(HazmitError):
    """A hazard, project, or consequence identifier is unknown."""


class ValidationError(HazmitError):
    """A model or bundle invariant is violated.

    ``field`` holds a dotted path to the offending field when known.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class CapacityError(HazmitError):
    """Problem too large for the requested algorithm."""


class InfeasibleError(HazmitError):
    """No portfolio can satisfy the request constraints."""


class DomainError(HazmitError):
    """Numeric input outside the operation's domain."""


class FitError(DomainError):
    """Regression design is degenerate."""


class SchemaError(HazmitError):
    """A required CSV column is missing from the input."""


class RecordError(HazmitError):
    """A CSV cell could not be parsed.

    Carries 1-based ``row`` and the ``column`` name.
    """

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class BundleError(HazmitError):
    """Bundle document is malformed or has an unsupported version."""


class UsageError(HazmitError):
    """Caller supplied contradictory or nonsensical request parameters."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
