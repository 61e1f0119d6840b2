"""Exception hierarchy.

``InputError`` subclasses signal bad user input (the CLI maps them to exit
code 2); everything else deriving from ``SeshError`` is an internal failure.
"""


class SeshError(Exception):
    pass


class InputError(SeshError, ValueError):
    pass


# numfield
class NotSquarefree(InputError):
    pass


class IrreducibilityUnverified(InputError):
    pass


class Reducible(IrreducibilityUnverified):
    pass


class FieldMismatch(InputError):
    pass


# p2geom
class AllCoordsZero(InputError):
    pass


class CommonComponent(InputError):
    pass


# linsys
class DuplicatePoint(InputError):
    pass


# seshadri
class GammaOutOfRange(InputError):
    pass


class NoBoundInBudget(SeshError):
    pass


class UnsupportedConfiguration(InputError):
    pass


# nslattice
class DimensionMismatch(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class NoCurveThroughPoint(InputError):
    pass


class NotNef(InputError):
    pass


class InconsistentCurveData(InputError):
    pass
