"""Exception hierarchy shared by the library and the CLI."""


class FDESError(Exception):
    """Base class for every error raised by this package."""


class GradeError(FDESError, ValueError):
    """A membership degree is malformed, out of range, or too precise."""


class ShapeError(FDESError, ValueError):
    """Matrix or vector dimensions do not conform."""


class AlphabetError(FDESError, ValueError):
    """Event labels are unknown, duplicated, or the alphabets differ."""


class ResourceLimitError(FDESError, RuntimeError):
    """A configured search budget or closure cap was exceeded."""


class HypothesisError(FDESError, ValueError):
    """A precondition the caller must guarantee (such as R1 <= R2) does not hold."""


class ModelFormatError(FDESError, ValueError):
    """A model document is malformed."""
