"""Exception types shared across the package.

Most failures are precondition violations on user-supplied numbers, so the
classes derive from ValueError and can be caught either specifically or as
plain ValueErrors at the API boundary.
"""


class ChoiFacesError(ValueError):
    """Base class for all domain errors raised by this package."""


class NotHermitianError(ChoiFacesError):
    """Input matrix is not Hermitian within the accepted asymmetry."""


class ConvergenceError(ChoiFacesError):
    """Eigensolver failed to reach its off-diagonal target within the sweep cap."""


class DimensionMismatchError(ChoiFacesError):
    """Matrix or vector shape does not match the expected dimensions."""


class NotPPTError(ChoiFacesError):
    """State is not positive under the partial transpose, so the request is undefined."""


class NotSeparableError(ChoiFacesError):
    """A separable decomposition was requested for a state that is not separable."""

    def __init__(self, message, classification=None):
        super().__init__(message)
        self.classification = classification


class NotPositiveMapError(ChoiFacesError):
    """Map parameters do not define a positive map, so its dual face is undefined."""


class OutOfRangeError(ChoiFacesError):
    """Scalar parameter lies outside the range where the construction exists."""


class ConstraintViolatedError(ChoiFacesError):
    """Numeric constraint between parameters is violated beyond tolerance."""


class ZeroAlphaError(ChoiFacesError):
    """A nonzero complex parameter is required."""


class DegenerateVectorError(ChoiFacesError):
    """Vector has too few nonzero coordinates for the requested construction."""


class DegeneratePairError(ChoiFacesError):
    """Both coordinates of a seed pair must be nonzero for this branch."""


class NotInQError(ChoiFacesError):
    """Product vector does not belong to the required product-vector family."""


class UnsupportedElementError(ChoiFacesError):
    """No closed-form family or fixture is available for this boundary element."""
