"""Exception hierarchy.

``ConfigurationError`` marks invalid user input (CLI exit code 2), while
``NumericalError`` subclasses mark failures of the numerical machinery
(CLI exit code 3).  The CLI prints the class name of a ``NumericalError``
so callers can dispatch on it.
"""


class FracLQRError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(FracLQRError):
    """Invalid configuration or argument values."""


class NumericalError(FracLQRError):
    """Base class for failures of a numerical procedure."""


class ImaginaryAxisEigenvalue(NumericalError):
    """The Hamiltonian has (near-)imaginary-axis eigenvalues, so no
    stabilizing Riccati solution exists for the requested order."""


class SingularT1(NumericalError):
    """The stable-subspace basis has a singular upper block."""


class NoConvergence(NumericalError):
    """An iterative solver exhausted its iteration budget."""


class NonConvergence(NumericalError):
    """A series evaluation exhausted its term budget."""


class DegenerateRoots(NumericalError):
    """Two characteristic roots coincide within tolerance; the
    mode-coefficient system would be singular."""


class VanishingModeValue(NumericalError):
    """A mode function vanishes at the initial point; the
    mode-coefficient system would be singular."""
