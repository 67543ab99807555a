"""Exception hierarchy for leibniz-nf.

Every error raised on purpose by the library derives from LeibnizError so
callers (the CLI in particular) can separate mathematical failures from
programming errors.
"""


# Exception hierarchy
class LeibnizError(Exception):
    """Base exception for leibniz-nf errors."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class DimensionError(LeibnizError):
    """Raised when a vector or subspace does not match the ambient dimension."""

    pass


class ShapeError(LeibnizError):
    """Raised when a matrix has the wrong shape (non-square, wrong size)."""

    pass


class SingularMatrixError(LeibnizError):
    """Raised when an invertible matrix was required."""

    def __init__(self, message: str, rank: int):
        super().__init__(message)
        self.rank = rank


class InvarianceError(LeibnizError):
    """Raised when a restriction subspace is not invariant under the operator."""

    pass


class ClosureError(LeibnizError):
    """Raised when a subspace is not closed under the bracket."""

    pass


class DomainError(LeibnizError):
    """Raised when an operation is applied outside its mathematical domain."""

    pass


class NilradicalInconsistencyError(LeibnizError):
    """Raised when the nilradical certificate fails.

    A complement vector acting nilpotently on the computed ideal means the
    greedy search missed an extension.
    """

    pass


class ParameterError(LeibnizError):
    """Raised for invalid family parameters."""

    pass


class NotThisFamilyError(LeibnizError):
    """Raised when a canonicalization premise does not hold for the input."""

    pass


class LeibnizViolationError(LeibnizError):
    """Raised when a table violates the Leibniz identity."""

    def __init__(self, message: str, violations: list[tuple[int, int, int]]):
        super().__init__(message)
        self.violations = violations


class RationalSyntaxError(LeibnizError):
    """Raised when rational text cannot be parsed."""

    pass


class TableParseError(LeibnizError):
    """Raised for malformed table files."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
