"""Band-limited sine-series sources f(x) = sum a_n sin(n pi x)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BandLimitError
from .spectral import GridSpec, SineSpectrum


@dataclass(frozen=True)
class SourceSpec:
    """Finite list of ``(n, amplitude)`` sine modes."""

    modes: tuple[tuple[int, float], ...]

    def __post_init__(self):
        modes = tuple((int(n), float(a)) for n, a in self.modes)
        ns = [n for n, _ in modes]
        if any(n < 1 for n in ns):
            raise ValueError("mode indices must be >= 1")
        if len(set(ns)) != len(ns):
            raise ValueError("mode indices must be distinct")
        object.__setattr__(self, "modes", tuple(sorted(modes)))

    @property
    def max_mode(self) -> int:
        return max((n for n, _ in self.modes), default=0)

    def min_grid(self) -> int:
        """Smallest even N that resolves every mode."""
        N = max(self.max_mode + 1, 4)
        return N + (N % 2)

    def check_band_limit(self, grid: GridSpec) -> None:
        if self.max_mode >= grid.N:
            raise BandLimitError(f"source mode n={self.max_mode} is not resolved on N={grid.N}")

    def spectrum(self, grid: GridSpec) -> SineSpectrum:
        self.check_band_limit(grid)
        coeffs = np.zeros(grid.size)
        for n, a in self.modes:
            coeffs[n - 1] = a
        return SineSpectrum(grid, coeffs)

    def derivative_samples(self, grid: GridSpec, order: int) -> np.ndarray:
        """Exact values of f^(order) at x_1..x_{N-1}; ``order`` must be even."""
        if order < 0 or order % 2:
            raise ValueError("only even derivative orders stay in the sine basis")
        j = grid.indices
        out = np.zeros(grid.size)
        for n, a in self.modes:
            xi = n * np.pi
            weight = a * (-(xi * xi)) ** (order // 2)
            # (n*j) mod 2N keeps the sine argument in [0, 2 pi)
            out += weight * np.sin(np.pi * ((n * j) % (2 * grid.N)) / grid.N)
        return out


def single_mode(n: int, amplitude: float = 1.0) -> SourceSpec:
    return SourceSpec(((n, amplitude),))


def monochromatic_source(k) -> SourceSpec:
    """f(x) = sin(n_k pi x) for k = n_k pi + 1."""
    from .schemes import as_wavenumber

    k = as_wavenumber(k)
    if k.offset != 1.0 or k.pi_multiple < 1:
        raise ValueError(f"monochromatic source needs k = n_k pi + 1 with n_k >= 1, got {k}")
    return single_mode(k.pi_multiple)


MIXED_MODES = tuple(5 * 2**j for j in range(6))


def mixed_source() -> SourceSpec:
    """f(x) = sum_{j=0..5} sin(2^j 5 pi x); needs N > 160."""
    return SourceSpec(tuple((n, 1.0) for n in MIXED_MODES))
