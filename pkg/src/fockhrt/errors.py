"""Exception hierarchy.

Two families: ``InputError`` (bad arguments, violated preconditions) and
``EngineError`` (a computation could not meet its accuracy contract). The CLI
maps them to exit codes 1 and 2.
"""


class InputError(ValueError):
    pass


class EngineError(RuntimeError):
    """A numerical or exact engine could not produce a trustworthy result."""

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class NeedsLargerTruncation(EngineError):
    """Truncation dimension too small for the requested displacement/vector."""

    def __init__(self, message, deviation=None):
        super().__init__(message)
        self.deviation = deviation

    def to_dict(self):
        out = super().to_dict()
        out["deviation"] = self.deviation
        return out


class TailGuardError(NeedsLargerTruncation):
    pass


class InsufficientGridError(EngineError):
    pass


class AliasingNotConverged(EngineError):
    pass


class ExactnessRequired(InputError):
    pass


class ConductorMismatch(InputError):
    pass


class VerificationFailure(EngineError):
    """An exact self-check failed. Always a defect, never expected."""
