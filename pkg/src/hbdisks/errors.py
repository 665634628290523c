"""Exception types raised across the package."""


class HBDisksError(Exception):
    """Base class for all package errors."""


class NonSimpleRoot(HBDisksError):
    pass


class DegenerateMatrix(HBDisksError):
    pass


class NotInterlacing(HBDisksError):
    pass


class ComplexRootDetected(HBDisksError):
    pass


class NoConvergence(HBDisksError):
    pass


class TooFewRoots(HBDisksError):
    pass


class FlatMinimum(HBDisksError):
    def __init__(self, message, midpoint=None):
        super().__init__(message)
        self.midpoint = midpoint


class GridTooCoarse(HBDisksError):
    pass


class BoundaryHit(HBDisksError):
    """The probe value lies (numerically) on the image of the contour."""


class Inconclusive(HBDisksError):
    pass


class CorollaryViolation(HBDisksError):
    pass


class PathLost(HBDisksError):
    pass


class PositivityLost(HBDisksError):
    pass
