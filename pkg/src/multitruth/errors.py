"""Exception types raised by the fusion engine."""


class FusionError(Exception):
    """Base class for all fusion-specific errors."""


class UnknownSourceError(FusionError):
    """A claim references a source with no quality entry."""


class DegenerateEvidenceError(FusionError):
    """All candidate likelihoods are zero; the posterior cannot be normalized."""


class InstanceTooLargeError(FusionError):
    """The candidate set exceeds the exact-enumeration cap."""


class ParseError(FusionError):
    """A claims or gold file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line
