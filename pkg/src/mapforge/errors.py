"""Exception hierarchy.  Every error carries a short machine-readable ``code``."""

from __future__ import annotations


class MapforgeError(Exception):
    code = "error"


class ValidationError(MapforgeError, ValueError):
    code = "invalid"


class FixedPoint(ValidationError):
    code = "FixedPoint"


class MatchingOverlap(ValidationError):
    code = "MatchingOverlap"


class NotSquares(ValidationError):
    code = "NotSquares"


class BadCornerCount(ValidationError):
    code = "BadCornerCount"


class MalformedDescriptor(ValidationError):
    code = "MalformedDescriptor"


class SymbolCountNotTwo(ValidationError):
    code = "SymbolCountNotTwo"


class AxiomViolation(ValidationError):
    code = "AxiomViolation"

    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"{axiom}: {detail}" if detail else axiom)


class GroundMismatch(ValidationError):
    code = "GroundMismatch"


class NotSubspace(ValidationError):
    code = "NotSubspace"


class ParseError(ValidationError):
    code = "ParseError"


class PreconditionFailed(MapforgeError):
    """A well-formed input that does not meet an operation's precondition."""

    code = "PreconditionFailed"


class NotConnected(PreconditionFailed):
    code = "NotConnected"


class NotEulerian(PreconditionFailed):
    code = "NotEulerian"


class NotProjective(PreconditionFailed):
    code = "NotProjective"


class NotPlanar(PreconditionFailed):
    code = "NotPlanar"


class NotACycle(PreconditionFailed):
    code = "NotACycle"


class NotACircuit(PreconditionFailed):
    code = "NotACircuit"


class NotDisjoint(PreconditionFailed):
    code = "NotDisjoint"


class TooLarge(PreconditionFailed):
    code = "TooLarge"


class BadParams(ValidationError):
    code = "BadParams"


class UnknownSuite(ValidationError):
    code = "UnknownSuite"
