"""Exception hierarchy shared by every layer of the package."""


class TropicalError(ValueError):
    """Base class for all errors raised by tropopt."""


# scalar layer
class InversionOfZero(TropicalError, ZeroDivisionError):
    pass


class RootOfZero(TropicalError, ZeroDivisionError):
    pass


# matrix layer
class DimensionMismatch(TropicalError):
    pass


class NotSquare(TropicalError):
    pass


class StarDiverges(TropicalError):
    """The Kleene star is undefined because Tr(A) exceeds the unit."""


class ZeroVector(TropicalError):
    pass


# regularity preconditions
class NotRowRegular(TropicalError):
    pass


class NotColumnRegular(TropicalError):
    pass


class NotRegular(TropicalError):
    pass


class IrregularCoefficient(TropicalError):
    pass


class IrregularBound(TropicalError):
    pass


class ZeroRightHandSide(TropicalError):
    pass


class ZeroP(TropicalError):
    pass


class IrregularQ(TropicalError):
    pass


class IrregularH(IrregularBound):
    pass


# optimization
class ZeroSpectralRadius(TropicalError):
    pass


class InfeasibleBounds(TropicalError):
    """The box g <= x <= h is empty (h^- g exceeds the unit)."""


class EnumerationTooLarge(TropicalError):
    pass


class EmptySolutionSet(TropicalError):
    pass


# scheduling
class InfeasibleDueDates(InfeasibleBounds):
    """Early starts cannot meet the due dates (f^- C g exceeds the unit)."""


class CyclicFinishStart(StarDiverges):
    """Finish-start lags form a cycle of positive length (Tr(DC) exceeds the unit)."""


# oracle / io
class GridTooLarge(TropicalError):
    pass


class ParseError(TropicalError):
    pass


class ValidationError(TropicalError):
    pass


class UnsupportedConstraintCombination(TropicalError):
    pass
