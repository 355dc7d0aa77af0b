"""Exception types shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; everything derives from GwinflectError so a CLI can catch one type.
"""


class GwinflectError(Exception):
    """Base class for all package-specific errors."""


class FieldMismatch(GwinflectError):
    """Operands live over different fields."""


class ZeroSquareClass(GwinflectError):
    """Square-class of 0 requested."""


class UnsupportedExtension(GwinflectError):
    """Norm/trace requested for an extension pair outside the supported shapes."""


class ZeroScale(GwinflectError):
    """Scaling a quadratic form by 0."""


class NoCanonicalReduction(GwinflectError):
    """Invariant reduction requested over a field with no canonical form."""


class ZeroFactorization(GwinflectError):
    """Factorization of the zero polynomial."""


class ZeroIsolation(GwinflectError):
    """Root isolation of the zero polynomial."""


class UndefinedResultant(GwinflectError):
    """Resultant of two zero polynomials."""


class DependentBasis(GwinflectError):
    """Wronskian of a linearly dependent family."""


class LiftRequired(GwinflectError):
    """A characteristic-p computation needs a characteristic-0 lift that is unavailable."""


class NonIntegralLift(GwinflectError):
    """A lifted coefficient has p in its denominator; reduction mod p is undefined."""


class InternalInconsistency(GwinflectError):
    """An identity the theory guarantees failed to hold; signals a defect."""


class TruncationTooShort(GwinflectError):
    """A power-series computation could not see past its truncation order."""


class SingularExpansion(GwinflectError):
    """Newton iteration hit a non-invertible linearization (non-squarefree data)."""


class TheoremHypothesisFailed(GwinflectError):
    """A closed-form index formula was invoked outside its hypotheses."""


class NotAnInflectionPoint(GwinflectError):
    """Local index requested at a point that is not in the inflection locus."""


class ImpossibleClass(GwinflectError):
    """A global class with odd rank-over-two was requested; cannot occur for valid input."""


class BadReductionPrime(GwinflectError):
    """Reduction mod p of a rational polynomial with p in a denominator."""


class ParseError(GwinflectError):
    """Polynomial expression syntax error; carries the offending position."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
