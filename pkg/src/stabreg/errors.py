"""Shared exception types for stabreg."""


class StabregError(Exception):
    """Base class for all stabreg errors."""


class DegreeZeroError(StabregError):
    """An operation required positive degree in the elimination variable."""


class DegreeTooLowError(StabregError):
    """Discriminant requested for a polynomial of degree < 2."""


class ZeroPolynomialError(StabregError):
    """Root isolation requested for the zero polynomial."""


class UndecidedAtPrecisionCap(StabregError):
    """A certified comparison could not be decided at the precision ceiling."""


class LeadingCoefficientAmbiguous(StabregError):
    """Interval classification with a leading-coefficient interval containing 0."""


class UnsupportedStepCount(StabregError):
    """Method family requested with a step count outside the supported range."""


class EliminationCollapse(StabregError):
    """A resultant in the curve builder vanished identically."""


class NoCandidates(StabregError):
    """A tangency pipeline produced no admissible candidates."""


class AllCandidatesRejected(StabregError):
    """Every tangency candidate failed the verification protocol."""


class VerificationUndecided(StabregError):
    """The verification protocol could not certify a candidate."""


class PoleOnGrid(StabregError):
    """sigma vanished at a curve-sampling grid point."""


class OnLeftEdge(StabregError):
    """Sector bound requested on the degenerate left edge of the wedge."""


class OddPowersPresent(StabregError):
    """Internal error: a curve expected to be even in its second variable is not."""
