"""Exception types raised by the library."""


class WiretapError(Exception):
    """Base class for all library errors."""


class InvalidMatrixError(WiretapError):
    """Input matrix violates a structural precondition (shape, finiteness, symmetry)."""


class NotPositiveDefiniteError(WiretapError):
    """A factorization that requires positive definiteness hit a non-positive pivot."""


class InvalidConfigError(WiretapError):
    """Configuration or feasibility precondition violated."""


class NumericalFailureError(WiretapError):
    """An objective or iterate became non-finite during optimization."""
