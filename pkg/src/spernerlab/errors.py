"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SpernerError(Exception):
    """Base class for every error raised by :mod:`spernerlab`."""


class InvalidComplexError(SpernerError, ValueError):
    """The input does not describe a valid subdivision."""


class DuplicateVertexError(InvalidComplexError):
    pass


class DegenerateSimplexError(InvalidComplexError):
    pass


class PseudomanifoldError(InvalidComplexError):
    pass


class CoverageError(InvalidComplexError):
    pass


class UnknownSimplexError(SpernerError, KeyError):
    """A simplex or vertex was queried that is not part of the complex."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class ResourceLimitError(SpernerError):
    """A configurable size cap would be exceeded."""


class LabelingError(SpernerError, ValueError):
    pass


class MissingLabelError(LabelingError):
    pass


class InvalidLabelingError(LabelingError):
    """The labeling violates the Sperner boundary condition."""

    def __init__(self, violations):
        self.violations = list(violations)
        shown = ", ".join(f"vertex {v} on face {i}" for v, i in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"Sperner condition violated: {shown}{more}")


class PathFollowingError(SpernerError, RuntimeError):
    """The door graph walk broke an invariant (bad complex or labeling)."""


class NotACocycleError(SpernerError, ValueError):
    pass


class MapEvaluationError(SpernerError, ValueError):
    """A user-supplied map returned a point outside the simplex."""


class FixedPointError(SpernerError, ValueError):
    """The ray retraction is undefined because f(x) == x."""


class SubdivisionTooCoarse(SpernerError):
    """No label passes the open-star test at ``vertex``."""

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"no admissible star label at vertex {vertex!r}; refine the subdivision")


class VerificationError(SpernerError, AssertionError):
    """Two independent computations disagree."""

    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)
