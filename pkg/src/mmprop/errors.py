"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class MmpropError(Exception):
    exit_code = 1


class DomainError(MmpropError, ValueError):
    """An argument is outside the domain of the operation."""

    exit_code = 3


class OutOfRangeError(DomainError):
    """Lookup outside the tabulated range (no extrapolation)."""


class ConfigurationError(MmpropError, ValueError):
    exit_code = 3


class AliasingError(ConfigurationError):
    """A tap delay reaches or exceeds one PN period."""


class InsufficientDataError(MmpropError, ValueError):
    exit_code = 3


class SchemaError(MmpropError, ValueError):
    exit_code = 3


class RecordValidationError(SchemaError):
    """One or more input lines failed validation.

    ``diagnostics`` holds ``(line_number, message)`` pairs.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = [f"line {n}: {msg}" for n, msg in self.diagnostics]
        super().__init__("\n".join(lines) or "invalid records")


class DegenerateFitError(MmpropError, ValueError):
    exit_code = 4


class BelowSensitivityError(MmpropError):
    exit_code = 5


class ReportIOError(MmpropError, OSError):
    exit_code = 6


class NoiseLimitedWarning(UserWarning):
    """The requested detection threshold reaches below the noise floor."""
