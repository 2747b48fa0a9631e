"""Fourier-symbol accuracy analysis for finite-difference Helmholtz schemes in 1D."""

from .schemes import Scheme, WaveNumber
from .spectral import GridSpec, SineSpectrum
from .symbol_analysis import fit_k_exponent, profile, psi, theorem1_bounds

__version__ = "0.1.0"

__all__ = [
    "GridSpec",
    "Scheme",
    "SineSpectrum",
    "WaveNumber",
    "fit_k_exponent",
    "profile",
    "psi",
    "theorem1_bounds",
]
