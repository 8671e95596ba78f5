"""Exception hierarchy.

Every error carries a CLI exit code so the front end can map failures
without inspecting types one by one.
"""

from __future__ import annotations


class TeichError(Exception):
    exit_code = 1


class ValidationError(TeichError):
    """The input is not an acceptable odd-block matrix."""

    exit_code = 2


class MatrixFormatError(ValidationError):
    pass


class NotOddBlock(ValidationError):
    def __init__(self, condition: str, column: int, detail: str):
        self.condition = condition
        self.column = column
        super().__init__(f"condition ({condition}) fails in column {column}: {detail}")


class NoPhiExists(ValidationError):
    pass


class AmbiguousPhi(ValidationError):
    def __init__(self, solutions):
        self.solutions = [tuple(s) for s in solutions]
        listed = "; ".join(str(s) for s in self.solutions)
        super().__init__(f"endpoint map is not unique, candidates: {listed}")


class Singular(ValidationError):
    pass


class NotAperiodic(ValidationError):
    pass


class NoRealization(ValidationError):
    pass


class HypothesisViolated(TeichError):
    """Input is valid but outside the class the construction handles."""

    exit_code = 3


class BothSides(HypothesisViolated):
    pass


class AlignmentConflict(HypothesisViolated):
    pass


class AlignmentUnderdetermined(HypothesisViolated):
    pass


class TilingMismatch(HypothesisViolated):
    pass


class Inconclusive(TeichError):
    """Interval certification ran out of precision."""

    exit_code = 4


class InternalError(TeichError):
    exit_code = 5


class InexactDivision(InternalError):
    pass


class DegenerateResult(InternalError):
    pass


class CrossCheckMismatch(InternalError):
    pass


class VerificationFailed(InternalError):
    pass
