"""Exception hierarchy.

Ordinary input problems derive from :class:`QinvarError`.  Failures that can
only happen if a proven statement were false (or our code were wrong) derive
from :class:`InternalInconsistency`; the CLI maps them to exit code 3.
"""

from __future__ import annotations


class QinvarError(Exception):
    """Base class for all errors raised by this package."""


class InternalInconsistency(QinvarError):
    """A computed value contradicts a theorem the computation relies on."""


# exactmath
class ZeroDenominator(QinvarError, ZeroDivisionError):
    pass


class PoleAtZero(QinvarError):
    pass


class ZeroFunction(QinvarError):
    pass


class NotSquare(QinvarError):
    pass


class SingularMatrix(QinvarError):
    pass


class ZeroInput(QinvarError):
    pass


class InvalidRational(QinvarError, ValueError):
    pass


class NonInvertibleCoefficient(QinvarError):
    pass


# algebras
class UnsupportedAlgebra(QinvarError):
    pass


class NotQuadratic(QinvarError):
    pass


class ZeroParameter(QinvarError):
    pass


class MixedParameters(QinvarError):
    pass


# automorphisms
class DimensionMismatch(QinvarError):
    pass


class NotAnAutomorphism(QinvarError):
    pass


class NotDiagonalizableShape(InternalInconsistency):
    pass


class ClosureExceedsCap(QinvarError):
    pass


class NotInvertible(QinvarError):
    pass


class DualRelationViolation(QinvarError):
    pass


class DoesNotPreserveF1(QinvarError):
    pass


# invariants
class UnsupportedCombination(QinvarError):
    pass


class LeadingExponentMismatch(InternalInconsistency):
    pass


class HdetRouteConflict(InternalInconsistency):
    pass


class UnsupportedLeaf(QinvarError):
    pass


class ZeroSeries(QinvarError):
    pass


# weyl
class NotBracketMap(QinvarError):
    pass


class DeterminantNotOne(InternalInconsistency):
    pass


class ShapeViolation(InternalInconsistency):
    pass


class HypothesesNotMet(QinvarError):
    pass


# lie
class InvalidTypeRank(QinvarError):
    pass


class ExtensionInconsistent(InternalInconsistency):
    pass


class NotNilpotent(QinvarError):
    pass


class NotLieAutomorphism(QinvarError):
    pass


class EpsilonNotVanishingOnDerived(QinvarError):
    pass


# cli
class DocumentError(QinvarError):
    """Invalid workspace document; carries a JSON-pointer-like position."""

    def __init__(self, message: str, position: str = ""):
        self.position = position
        super().__init__(f"{position}: {message}" if position else message)


class UnknownReference(DocumentError):
    pass
