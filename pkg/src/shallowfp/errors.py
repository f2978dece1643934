"""Domain-level exceptions shared across the package."""


class DomainError(ValueError):
    """Base class for errors caused by invalid mathematical inputs."""


class CompositeModulusError(DomainError):
    """Raised when a modulus that must be prime fails the primality check."""


class EmptyAikpsRangeError(DomainError):
    """Raised when the AIKPS prime interval contains no prime at all."""


class GapUnsatisfiableError(DomainError):
    """Raised when 3^m > p, so no proper GAP of dimension m exists in Z_p."""


class GapSearchExhaustedError(DomainError):
    """Raised when the seeded proper-GAP search runs out of tries."""
