"""Exception types shared across the toolkit."""


class CopAhpError(Exception):
    """Base class for all toolkit errors."""


class NonSquare(CopAhpError):
    pass


class OrderOutOfRange(CopAhpError):
    pass


class NonPositiveEntry(CopAhpError):
    pass


class ReciprocityBroken(CopAhpError):
    pass


class NotTransitive(CopAhpError):
    pass


class OrderMismatch(CopAhpError):
    pass


class EigenSolveFailed(CopAhpError):
    pass


class OptimizerNonConvergent(CopAhpError):
    pass


class LpInfeasible(CopAhpError):
    pass


class LpUnbounded(CopAhpError):
    pass


class NumericalBreakdown(CopAhpError):
    pass


class MilpInfeasible(CopAhpError):
    pass


class TimeLimitReached(CopAhpError):
    """Raised when a solver hits its wall-clock budget with no incumbent."""


class Stage1NotOptimal(CopAhpError):
    pass


class RevisionInfeasible(CopAhpError):
    """Pins are incompatible with index-exchangeability plus the consistency cap."""

    def __init__(self, message, pins=()):
        super().__init__(message)
        self.pins = list(pins)


class ParseError(CopAhpError):
    pass
