"""Exception types shared across the package."""


class SegscanError(Exception):
    """Base class for all errors raised by segscan."""


class ValidationError(SegscanError):
    """Input data or configuration violates a documented invariant."""


class ProfileParseError(SegscanError):
    """A profile file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DegenerateScaleError(SegscanError):
    """Noise-scale estimation failed (MAD is zero)."""
