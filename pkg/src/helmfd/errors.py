"""Exception types raised across the package."""


class HelmholtzError(ValueError):
    """Base class for invalid inputs to the analysis."""


class ResonanceError(HelmholtzError):
    """k^2 - xi^2 is (numerically) zero: the continuous problem is resonant."""


class DiscreteResonance(HelmholtzError):
    """A left symbol vanishes, so the discrete operator is singular at mode ``n``."""

    def __init__(self, n, value):
        self.n = int(n)
        self.value = float(value)
        super().__init__(f"discrete symbol vanishes at n={self.n} (value {self.value:.3e})")


class SingularSystem(HelmholtzError):
    """Tridiagonal elimination met a pivot below the magnitude guard."""


class BandLimitError(HelmholtzError):
    """Source carries a frequency the grid cannot resolve (n >= N)."""


class LadderError(HelmholtzError):
    """Rows passed to the exponent fit do not form a k-doubling / N-quadrupling ladder."""
