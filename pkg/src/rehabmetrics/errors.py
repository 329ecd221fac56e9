"""Exception hierarchy for the rehabmetrics package.

Every anticipated failure raises a subclass of :class:`RehabError`, so callers
can distinguish structured domain errors from genuine bugs.
"""


class RehabError(Exception):
    """Base class for all structured errors raised by this package."""


# --- .trc ingest -----------------------------------------------------------

class TrcError(RehabError):
    """Base class for .trc parsing/writing errors."""


class MalformedHeader(TrcError):
    pass


class CountMismatch(TrcError):
    pass


class NonMonotonicTime(TrcError):
    pass


class UnparsableNumber(TrcError):
    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class JointNotFound(RehabError):
    def __init__(self, joint, available):
        super().__init__(
            f"joint {joint!r} not found; available markers: {sorted(available)}"
        )
        self.joint = joint
        self.available = list(available)


# --- signal primitives -----------------------------------------------------

class SignalError(RehabError):
    pass


class WindowEven(SignalError):
    pass


class WindowTooLarge(SignalError):
    pass


class TooShort(SignalError):
    pass


class EmptyInput(SignalError):
    pass


class ZeroVariance(SignalError):
    pass


# --- trial metrics ---------------------------------------------------------

class MetricError(RehabError):
    pass


class TooFewBeats(MetricError):
    pass


class WindowEmpty(MetricError):
    pass


class NoCycles(MetricError):
    pass


class SegmentTooShort(MetricError):
    pass


class ZeroDC(MetricError):
    pass


class NoValidSubmovements(MetricError):
    pass


# --- store / ingestion -----------------------------------------------------

class StoreError(RehabError):
    pass


class SchemaViolation(StoreError):
    def __init__(self, field, reason):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class MissingCapture(StoreError):
    pass


class DuplicateSessionId(StoreError):
    pass


class NotFound(StoreError):
    pass


class InvalidParams(StoreError):
    pass


class EmptySession(RehabError):
    pass
