"""Exception hierarchy shared by all solvers."""


class QWalkError(Exception):
    """Base class for every error raised by :mod:`qwalk`."""


class NotNormalized(QWalkError, ValueError):
    """Initial spinor does not have unit norm."""


class EmptyDistribution(QWalkError, ValueError):
    """A distribution with zero total weight was supplied."""


class DegenerateDenominator(QWalkError, ZeroDivisionError):
    """The spectral inversion divides by zero (coin parameter equal to one)."""


class InvalidCutoff(QWalkError, ValueError):
    """Gaussian cutoff width must be strictly positive."""


class UnsupportedCoin(QWalkError, ValueError):
    """Coin parameter outside the domain of the requested solver."""


class NonConvergent(QWalkError, ArithmeticError):
    """A quadrature failed to reach its error target."""


class AiryRangeError(QWalkError, ArithmeticError):
    """Airy argument outside the supported range (overflow or underflow)."""


class ConfigError(QWalkError, ValueError):
    """Invalid run configuration."""
