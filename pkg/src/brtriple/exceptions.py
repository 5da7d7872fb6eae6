"""Exception types shared across the package."""


class BrTripleError(Exception):
    """Base class for all package-specific errors."""


class InvalidSeriesError(BrTripleError):
    """Series parameters violate the denominator-pole rule (undefined series)."""


class SeriesDivergenceError(BrTripleError):
    """Refusal to sum a series that diverges at the requested argument."""


class SingularInstanceError(BrTripleError):
    """A rational closed-form expression hit a zero denominator."""


class DomainError(BrTripleError):
    """Parameters lie outside the absolute-convergence domain of an integral."""
