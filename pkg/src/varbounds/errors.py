"""Exception hierarchy.

Input problems derive from :class:`ValueError`; bounds whose defining
denominator vanishes raise a :class:`DegenerateBound` subclass instead of
returning ``inf``.
"""


class UncertaintyError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(UncertaintyError, ValueError):
    pass


class NotSquare(InvalidInput):
    pass


class NotHermitian(InvalidInput):
    pass


class NonFinite(InvalidInput):
    pass


class ShapeMismatch(InvalidInput):
    pass


class DimMismatch(InvalidInput):
    pass


class NegativeEigenvalue(InvalidInput):
    pass


class BlochNormExceeded(InvalidInput):
    pass


class TraceNotOne(InvalidInput):
    pass


class NotPSD(InvalidInput):
    pass


class EmptySet(InvalidInput):
    pass


class NeedAtLeastThree(InvalidInput):
    pass


class CommutatorStructureViolated(InvalidInput):
    pass


class BadRank(InvalidInput):
    pass


class NotConverged(UncertaintyError, ArithmeticError):
    pass


class DegenerateBound(UncertaintyError, ArithmeticError):
    """A bound's normalising eigenvalue/singular value is numerically zero."""


class AllCompatible(DegenerateBound):
    pass


class AllCovariancesVanish(DegenerateBound):
    pass
