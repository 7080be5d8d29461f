"""Exception types shared across the package."""


class KrontoricError(Exception):
    """Base class for package errors."""


class ShapeError(KrontoricError):
    """Tableau or matrix data with inconsistent shape."""


class LabelError(KrontoricError):
    """Tableau label outside the valid range for its side."""


class ResourceCapError(KrontoricError):
    """A configured resource cap was exceeded.

    Carries the cap value and, for enumerations, whether partial results
    were produced.
    """

    def __init__(self, message, cap=None, partial=False):
        super().__init__(message)
        self.cap = cap
        self.partial = partial


class EmptyInputError(KrontoricError):
    """Operation on an empty polynomial / polytope where nonempty is required."""


class IncoherentGradingError(KrontoricError):
    """A grading fails to select a unique maximal monomial somewhere.

    `offenders` lists the subsets (or exponent pairs) realizing the tie.
    """

    def __init__(self, message, offenders=()):
        super().__init__(message)
        self.offenders = tuple(offenders)


class InvalidGroupElementError(KrontoricError):
    """Singular matrix passed where an invertible group element is required."""


class UnsupportedError(KrontoricError):
    """Requested construction is outside the supported parameter range."""
