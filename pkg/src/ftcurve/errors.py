"""Exception types raised across the package."""


class FTCurveError(Exception):
    """Base class for all package errors."""


class DegenerateCurve(FTCurveError):
    """Curve collapses below its minimum vertex count, or has repeated vertices."""


class BadParams(FTCurveError):
    """Parameter values are not strictly increasing or leave the domain."""


class OutOfRange(FTCurveError):
    """Arclength position outside ``[0, length]`` on an arc."""


class DimensionMismatch(FTCurveError):
    """Inputs live in different ambient dimensions."""


class BadDims(FTCurveError):
    """Invalid ambient/target dimension combination."""


class AmbiguousSign(FTCurveError):
    """Signed turning angle requested at a cusp."""


class CuspError(FTCurveError):
    """Turning angle of pi where the operation cannot handle it."""

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class PreconditionFailed(FTCurveError):
    """A theorem hypothesis does not hold for the given input."""

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis


class DegenerateDirection(FTCurveError):
    """Height function is constant along the loop for this direction."""


class EdgeTooLong(FTCurveError):
    """A tantrix gap reaches pi, so great-circle crossings are ill-defined."""


class NotInUnitBall(PreconditionFailed):
    def __init__(self, message, vertex=None):
        super().__init__(message, hypothesis="unit-ball")
        self.vertex = vertex


class InfiniteDistortion(FTCurveError):
    """Two distinct arclength positions map to the same point."""


class SearchFailed(FTCurveError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class CuspEncountered(FTCurveError):
    """Raised by the bending flow; carries the trace accumulated so far."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class CurveFileError(FTCurveError):
    """Malformed curve file; ``line`` and ``field`` locate the problem when known."""

    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.field = field
