"""Exception hierarchy shared by every sodkit module."""


class SodError(Exception):
    """Base class for all library errors."""


class UsageError(SodError, ValueError):
    """Inputs have the wrong shape or violate a documented precondition."""


class NonUnimodular(SodError):
    """The Gram matrix has |det| != 1, so its inverse is not integral."""


class NotExceptional(SodError):
    """A class used as a mutation centre does not satisfy chi(e, e) = 1."""


class NotBNPExtremal(SodError):
    """h0 * h1 != g, so the line bundle data cannot be Petri extremal."""


class IncompleteModel(SodError):
    """A finite graded model lacks the Hom, bimodule or action data a computation needs."""


class NotAdherent(SodError):
    """Adherence dimensions differ from 1; the exotic-object cancellation does not apply."""


class HypothesisNotMet(SodError):
    """A hypothesis flag required by the Serre-pair criterion is false."""

    def __init__(self, flag, message=None):
        self.flag = flag
        super().__init__(message or f"hypothesis not met: {flag}")


class OutOfPaperRange(SodError):
    """No closed formula is available for these parameters."""


class ChaseFailed(UsageError):
    """A long exact sequence chase was given ranks inconsistent with the dimensions."""

    def __init__(self, degree, message):
        self.degree = degree
        super().__init__(f"degree {degree}: {message}")
