"""
Exception hierarchy for the netcoding application.

Every error raised on purpose by the library derives from NetcodingError and
carries the process exit code the management commands report for it:

    0  success
    2  configuration error (bad network file, bad flags, out-of-range input)
    3  guard refusal (an enumeration or LP would exceed a size limit)
    4  statistical no-fit (not enough usable points for an exponent fit)

Usage:
    from netcoding.exceptions import DomainError
    raise DomainError("field size must be one of 2, 16, 256")
"""


class NetcodingError(Exception):
    """Base class for all netcoding errors."""

    exit_code = 1


class DomainError(NetcodingError, ValueError):
    """An argument lies outside the domain of the operation."""

    exit_code = 2


class ConfigurationError(NetcodingError):
    """
    A network description or experiment configuration is invalid.

    ``location`` names the offending part of the input (for example
    ``arcs[2].loss.epsilon``) so the message can point at it.
    """

    exit_code = 2

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class GuardRefusal(NetcodingError):
    """The requested computation exceeds a configured size guard."""

    exit_code = 3


class EncodeOnEmptyError(NetcodingError):
    """A node with an empty memory was asked to emit a packet."""

    exit_code = 2


class NoFitError(NetcodingError):
    """An empirical exponent fit has too few usable points."""

    exit_code = 4
