"""Exception hierarchy for framelab.

All library errors derive from :class:`FramelabError` so callers can
distinguish framelab failures from built-in ones (e.g. a plain
``ValueError`` coming from numpy).
"""


class FramelabError(Exception):
    """Base class for all framelab errors."""


class InvalidInput(FramelabError):
    """An argument is malformed: wrong shape, non-finite entries,
    mismatched ambient dimensions, or a violated precondition."""


class DegenerateInput(FramelabError):
    """The input is numerically zero where a nonzero object is required."""


class SingularRestriction(FramelabError):
    """A restricted operator that should be invertible is numerically
    singular."""


class InvalidDualParam(FramelabError):
    """A dual-parametrization matrix violates its defining constraints."""


class RankError(FramelabError):
    """A block expected to have rank at most one has higher rank."""


class NotAFrame(FramelabError):
    """The sequence is not a frame for the whole space."""


class NotAFrameSequence(FramelabError):
    """The sequence is not a frame sequence (numerically zero)."""


class DegenerateGavrutaDual(FramelabError):
    """A Gavruta dual has a vanishing cross operator outside the
    degenerate index set, so it cannot be reweighted into a witnessed
    dual."""


class NotApplicable(FramelabError):
    """The hypotheses of the requested bound do not hold.

    Carries the partially filled report (if any) in ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
