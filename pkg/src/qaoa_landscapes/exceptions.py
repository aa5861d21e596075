"""Exception hierarchy shared by all modules."""


class LandscapeError(Exception):
    """Base class for every error raised by this package."""


class HamiltonianError(LandscapeError, ValueError):
    """Malformed Hamiltonian or graph input."""


class IncommensurateCoefficientsError(LandscapeError, ValueError):
    """Coefficients have no usable rational common divisor."""


class EnumerationLimitError(LandscapeError, ValueError):
    """Requested operation would enumerate too many bitstrings."""


class UnsupportedOrderError(LandscapeError, ValueError):
    """Evaluator cannot handle the Hamiltonian's term weights."""


class GraphGenerationError(LandscapeError, ValueError):
    """Random graph could not be generated with the given parameters."""
