"""Exception types raised by the library."""


class RiccatiFlowError(Exception):
    """Base class for all library errors."""


class DomainError(RiccatiFlowError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class PreconditionError(RiccatiFlowError, ValueError):
    """A stated precondition (e.g. a coefficient condition) does not hold."""


class AdmissibilityError(DomainError):
    """An arcsin argument or similar quantity is out of range at a location.

    ``location`` holds whatever the caller knows about where it happened,
    e.g. ``{"z": 0.1, "t": 2.0}``.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = dict(location or {})


class SingularityError(DomainError):
    """A closed form hit a pole (tan at pi/2, integrand singularity, ...)."""


class BoundaryEscape(DomainError):
    """The solution leaves the interval on which an implicit relation is invertible."""


class BindingError(RiccatiFlowError, ValueError):
    """Parameters that must be tied together (e.g. kappa * beta = 1) are not."""


class GridError(RiccatiFlowError, ValueError):
    """Grid too small for the requested stencil, or otherwise malformed."""
