"""Exception hierarchy shared by the computational modules and the CLI."""


class PeriodscopeError(Exception):
    """Base class for domain errors; ``code`` is the machine-readable tag."""

    code = "error"

    def __init__(self, message: str = "", code: str | None = None):
        super().__init__(message or self.code)
        if code is not None:
            self.code = code


class ReconstructionError(PeriodscopeError):
    code = "inconsistent samples"


class SingularFiber(PeriodscopeError):
    code = "singular fiber"


class NotReducible(PeriodscopeError):
    code = "not reducible"


class ReducibleCover(PeriodscopeError):
    code = "reducible cover"


class ReductionFailure(PeriodscopeError):
    code = "reduction failure"


class OrderExceeded(PeriodscopeError):
    code = "order exceeded"


class IrregularPoint(PeriodscopeError):
    code = "irregular point"


class PrecisionExhausted(PeriodscopeError):
    code = "precision exhausted"


class LoopTooClose(PeriodscopeError):
    code = "loop too close"


class BoundaryPoint(PeriodscopeError):
    code = "boundary point"


class OutOfRange(PeriodscopeError):
    code = "out of range"


class UnknownEntry(PeriodscopeError):
    code = "unknown entry"
