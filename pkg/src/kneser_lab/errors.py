"""Exception types shared across the package."""


class KneserLabError(Exception):
    """Base class for all package errors."""


class InvalidParams(KneserLabError):
    """A numeric argument violates a documented precondition."""


class CapExceeded(KneserLabError):
    """Ground set larger than the configured bit-width cap."""


class InstanceTooLarge(KneserLabError):
    """Generated object would exceed a configured size limit."""


class EmptyInput(KneserLabError):
    """An operation that needs at least one item received none."""


class InvalidPartSpec(KneserLabError):
    """Block list is not a valid partition of the ground set."""


class InadmissibleParams(KneserLabError):
    """Parameters violate the admissibility hypothesis r*k <= (r-1)*n."""


class InvalidCertificate(KneserLabError):
    """A certificate failed verification where a valid one is required."""


class MalformedCertificate(KneserLabError):
    """A certificate file or structure cannot be parsed."""


class LengthMismatch(KneserLabError):
    """A color list does not match the vertex count."""
