"""Exception types raised by the verification routines.

Every failure that corresponds to a violated mathematical property carries
the offending residual where one is available, so callers can report it.
"""

__all__ = [
    "CalculusError",
    "ParseError",
    "DimensionMismatch",
    "PentagonViolation",
    "AlgebraNotClosed",
    "NotManageable",
    "NotKacType",
    "BicharacterViolation",
    "SourceTargetMismatch",
    "ExtractionFailure",
    "HopfHomViolation",
    "RangeViolation",
    "CoactionViolation",
    "SolveFailure",
    "RecoveryFailure",
    "NotAGroup",
    "NotAbelian",
]


class CalculusError(Exception):
    """Base class for all verification failures.

    The optional ``residual`` records how badly the violated identity missed.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ParseError(CalculusError):
    """A file or dictionary does not match the expected JSON layout."""


class DimensionMismatch(CalculusError):
    """Operands live on tensor factors of incompatible sizes."""


class PentagonViolation(CalculusError):
    """The pentagon identity fails beyond tolerance."""


class AlgebraNotClosed(CalculusError):
    """A candidate operator system is not closed under product or adjoint."""


class NotManageable(CalculusError):
    """The manageability witness is not unitary."""


class NotKacType(CalculusError):
    """The antipode construction does not close into an involutive map."""


class BicharacterViolation(CalculusError):
    """One of the two defining equations of a bicharacter fails."""


class SourceTargetMismatch(CalculusError):
    """Arrows are composed whose middle objects differ."""


class ExtractionFailure(CalculusError):
    """A tensor factor expected to be trivial carries nontrivial content."""


class HopfHomViolation(CalculusError):
    """A map fails multiplicativity, *-preservation, unitality, or intertwining."""


class RangeViolation(CalculusError):
    """Images escape the stated target algebra."""


class CoactionViolation(CalculusError):
    """A coaction axiom (morphism property, coassociativity, density) fails."""


class SolveFailure(CalculusError):
    """A linear solve for an induced map has no solution within tolerance."""


class RecoveryFailure(CalculusError):
    """A pushed-forward corepresentation cannot be recovered from its coaction."""


class NotAGroup(CalculusError):
    """A multiplication table violates the group axioms."""


class NotAbelian(CalculusError):
    """A commutative-group construction was applied to a nonabelian group."""
