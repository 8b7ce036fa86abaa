"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A structural validation (axiom checker, invariant) failed.

    Carries the offending report so callers can print a witness.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConsistencyError(RuntimeError):
    """An internal cross-check that must hold for valid inputs failed.

    Raised with diagnostics; indicates a bug or corrupted input, never a
    normal rejection.
    """


class GuardExceededError(RuntimeError):
    """A resource guard (dimension cap) was exceeded."""


class SpecFileError(ValueError):
    """A spec file could not be parsed or failed validation."""
