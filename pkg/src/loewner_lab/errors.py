"""Exception hierarchy shared by every module of the package."""


class LoewnerLabError(Exception):
    """Base class for all errors raised by loewner_lab."""


class DegenerateLevel(LoewnerLabError):
    """A level set meets the function tangentially (non-simple root)."""

    def __init__(self, message, *, level=None, t=None):
        super().__init__(message)
        self.level = level
        self.t = t


class DegenerateRay(DegenerateLevel):
    """The horizontal ray through the query point is tangent to the curve."""


class OnCurve(LoewnerLabError):
    """The query point lies within the off-curve tolerance of the curve."""

    def __init__(self, message, *, distance=None):
        super().__init__(message)
        self.distance = distance


class NonConvergent(LoewnerLabError):
    """Adaptive refinement exceeded its interval budget."""


class ArityMismatch(ValueError, LoewnerLabError):
    """Root lists of incompatible lengths were supplied."""


class LemmaViolation(LoewnerLabError):
    """The division step failed to preserve interlacing.

    This is either a bug or a genuine degeneracy of the input pair; the
    offending data is kept on ``witness`` so it can be reported.
    """

    def __init__(self, message, *, witness=None):
        super().__init__(message)
        self.witness = witness or {}


class DegenerateInstance(LoewnerLabError):
    """A constructed curve is not immersed or fails a construction identity."""


class TangentialEvent(LoewnerLabError):
    """The deformation passes through the test point tangentially."""


class NotApplicable(LoewnerLabError):
    """The requested check does not apply to the given input."""
