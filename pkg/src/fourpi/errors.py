"""Exception types raised by the simulation modules."""


class DomainError(ValueError):
    """An input lies outside the domain of the requested formula."""


class GeometryError(DomainError):
    """The Laue geometry is impossible (g1 >= 2 k0)."""


class ThresholdError(DomainError):
    """A local wavenumber is exactly zero (energy equals the potential step)."""


class ChannelClosedError(DomainError):
    """A spin channel is evanescent where a propagating channel is required."""


class NumericalError(ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""
