"""Exception types shared across the package."""


class DevinkError(Exception):
    """Base class for all errors raised by this package."""


class StrokeFormatError(DevinkError):
    """A stroke record or stroke file could not be parsed.

    Carries the 1-based line number when the error comes from a file.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownPrimitiveError(DevinkError):
    """A label string is not one of the 69 registered primitive names."""


class DegenerateStrokeError(DevinkError):
    """A stroke has no usable geometry (e.g. all critical points coincide)."""


class SequenceTooShortError(DevinkError):
    """A coordinate sequence is too short for the requested transform."""


class TrainingDataError(DevinkError):
    """The training set cannot support the requested model (e.g. a class
    in the roster has no samples)."""


class ConvergenceError(DevinkError):
    """An iterative solver hit its iteration cap before converging."""


class ModelFormatError(DevinkError):
    """A model file is malformed or has an unsupported version."""
