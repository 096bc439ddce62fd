"""Failure types shared across the package.

Every domain failure maps to one class below so that callers (CLI exit
handling, HTTP responses, in-band series entries) can report a stable
name rather than parsing message text.
"""

from __future__ import annotations


class DesignError(Exception):
    """Base class for all optical-design failures."""

    @property
    def name(self) -> str:
        """Stable identifier of the failure, the class name."""
        return type(self).__name__


class SchemaError(DesignError):
    """Malformed external input: unknown/missing fields, bad types, bad version."""


class NonPositiveLength(DesignError):
    """A length parameter that must be strictly positive (and finite) is not."""


class MTooSmall(DesignError):
    """Micro image resolution is not an integer count of at least 2 pixels."""


class FocusNotBeyondFocal(DesignError):
    """Requested focus does not lie beyond the main lens focal length."""


class BothOrNeitherFocusGiven(DesignError):
    """Exactly one of focus distance or image distance must be supplied."""


class VirtualObject(DesignError):
    """Image distance below the focal length conjugates to a virtual object."""


class SingularSystem(DesignError):
    """Linear system determinant vanishes within the conditioning threshold."""


class ParallelRays(SingularSystem):
    """Two rays with (numerically) equal slopes have no finite intersection."""


class MixedSides(DesignError):
    """Rays referenced to different principal frames cannot be intersected."""


class VirtualRefocusPlane(DesignError):
    """Synthetic focus falls inside the focal length; no real object plane.

    Carries the computable part of the result so series reporting can
    still show how far inside the focal length the request landed.
    """

    def __init__(self, message: str, *, shift: float, elongation: float,
                 intersection_y: float, effective_image_distance: float):
        super().__init__(message)
        self.shift = shift
        self.elongation = elongation
        self.intersection_y = intersection_y
        self.effective_image_distance = effective_image_distance


class DegenerateDOF(DesignError):
    """Shift magnitude too small for a meaningful depth-of-field bracket."""


class EmptySeries(DesignError):
    """A series computation was requested with no elements."""


class InvalidGap(DesignError):
    """Triangulation gap must be a nonzero integer."""


class VirtualPlane(DesignError):
    """Triangulated intersection lies behind the object-side principal plane."""


class UnsupportedKind(DesignError):
    """The renderer does not support this scene kind."""
