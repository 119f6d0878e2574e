"""Exception types raised across the package."""


class MwldError(Exception):
    """Base class for all package errors."""


class FormatError(MwldError, ValueError):
    """Malformed or unsupported raster/ground-truth payload."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class UnsupportedDepthError(FormatError):
    pass


class SequenceError(MwldError, ValueError):
    pass


class EmptyInputError(SequenceError):
    pass


class GapError(SequenceError):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__("missing frame(s): " + ", ".join(self.missing))


class DimensionMismatchError(SequenceError):
    pass


class RangeError(MwldError, ValueError):
    pass


class LayoutError(MwldError, ValueError):
    pass
