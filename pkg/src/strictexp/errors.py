"""Exception hierarchy shared by every module."""


class StrictExpError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrix(StrictExpError, ValueError):
    pass


class NotUnimodular(StrictExpError, ValueError):
    pass


class DimensionMismatch(StrictExpError, ValueError):
    pass


class MatrixParseError(StrictExpError, ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InvalidRegion(StrictExpError, ValueError):
    pass


class Degenerate(StrictExpError, ValueError):
    pass


class PreconditionFailed(StrictExpError, ValueError):
    pass


class NotExpansive(PreconditionFailed):
    pass


class HypothesisFailed(PreconditionFailed):
    pass


class NotOnBoundary(PreconditionFailed):
    pass


class NotATile(PreconditionFailed):
    pass


class SeedNotFound(StrictExpError, RuntimeError):
    pass


class CertificationFailed(StrictExpError, RuntimeError):
    pass


class NonTermination(StrictExpError, RuntimeError):
    pass
