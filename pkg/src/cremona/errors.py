"""Typed domain errors.

Every error the library raises on bad mathematical input derives from
CremonaError and carries a stable ``code`` string; the CLI maps the code
into its error report and exits 1.  Genuine programming errors (violated
internal invariants) stay plain ValueError/AssertionError.
"""


class CremonaError(Exception):
    code = "ERROR"


class DegreeMismatchError(CremonaError):
    code = "DEGREE_MISMATCH"


class DegenerateTripleError(CremonaError):
    code = "DEGENERATE_TRIPLE"


class SingularMatrixError(CremonaError):
    code = "SINGULAR_MATRIX"


class NotQuadraticError(CremonaError):
    code = "NOT_QUADRATIC"


class NotBirationalError(CremonaError):
    code = "NOT_BIRATIONAL"


class ResultantCollapseError(CremonaError):
    code = "RESULTANT_COLLAPSE"


class IncompleteVectorError(CremonaError):
    code = "INCOMPLETE_VECTOR"


class DegreeTooLargeError(CremonaError):
    code = "DEGREE_TOO_LARGE"


class NonProperCenterError(CremonaError):
    code = "NON_PROPER_CENTER"


class NoetherViolationError(CremonaError):
    code = "NOETHER_VIOLATION"


class StuckError(CremonaError):
    code = "STUCK"

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NonterminationGuardError(CremonaError):
    code = "NONTERMINATION_GUARD"

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class InsufficientBaseCountError(CremonaError):
    code = "INSUFFICIENT_BASE_COUNT"


class CollinearCentersError(CremonaError):
    code = "COLLINEAR_CENTERS"


class IrrationalBaseLocusError(CremonaError):
    code = "IRRATIONAL_BASE_LOCUS"


class NotAutomorphismError(CremonaError):
    code = "NOT_AUTOMORPHISM"


class DeterminantNotUnitError(CremonaError):
    code = "DETERMINANT_NOT_UNIT"


class ParseError(CremonaError):
    """Raised on malformed input text; ``position`` is a 0-based offset."""

    code = "PARSE_ERROR"

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
