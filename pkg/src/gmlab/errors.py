"""Exception types shared across the package."""


class GmlabError(Exception):
    """Base class for all gmlab-specific failures."""


class ContractionError(GmlabError, ValueError):
    """Neumann inversion requested for an element with quasi-norm >= 1."""


class VanishingFourierError(GmlabError, ValueError):
    """The Fourier series of a sequence vanishes (or nearly so) on the grid,
    so the convolution operator is not invertible."""


class NotInvertibleError(GmlabError, ValueError):
    """An operator is singular or too ill-conditioned to invert reliably."""


class ToleranceError(GmlabError):
    """A certified numerical inequality failed beyond floating-point slack."""
