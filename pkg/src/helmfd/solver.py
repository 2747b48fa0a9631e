"""Two independent discrete solvers that check each other.

``solve_spectral`` divides mode by mode, u_n = R^h(xi_n) f_n / H^h(xi_n).
``solve_physical`` assembles the tridiagonal system from the stencil and the
sampled right-hand side and eliminates directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularSystem
from .schemes import as_wavenumber, continuous_inverse_symbol, rhs_operator, stencil
from .sources import SourceSpec
from .spectral import GridFunction, GridSpec, SineSpectrum, dst_forward, dst_inverse
from .symbol_analysis import discrete_multiplier

PIVOT_RTOL = 1e-14


@dataclass(frozen=True, eq=False)
class DiscreteSolution:
    grid: GridSpec
    values: GridFunction
    spectrum: SineSpectrum


def solve_spectral(scheme, k, grid: GridSpec, f_hat: SineSpectrum) -> DiscreteSolution:
    grid.require_even()
    if f_hat.grid != grid:
        raise ValueError("source spectrum lives on a different grid")
    mult = discrete_multiplier(scheme, k, grid, grid.frequencies)
    spec = SineSpectrum(grid, mult * f_hat.coeffs)
    return DiscreteSolution(grid, dst_inverse(spec), spec)


def thomas_solve(sub: float, diag: float, sup: float, rhs) -> np.ndarray:
    """Solve a constant-coefficient tridiagonal system by elimination.

    No row exchanges.  The Helmholtz matrix is indefinite, so every pivot is
    checked against ``PIVOT_RTOL * max(|diag|, 2|sub|)``.
    """
    d = [float(v) for v in np.asarray(rhs, dtype=np.float64)]
    n = len(d)
    guard = PIVOT_RTOL * max(abs(diag), 2.0 * abs(sub))
    c = [0.0] * n
    pivot = diag
    for i in range(n):
        if i:
            pivot = diag - sub * c[i - 1]
        if abs(pivot) < guard:
            raise SingularSystem(f"pivot {pivot:.3e} at row {i} below guard {guard:.3e}")
        c[i] = sup / pivot
        d[i] = (d[i] - sub * d[i - 1]) / pivot if i else d[i] / pivot
    for i in range(n - 2, -1, -1):
        d[i] -= c[i] * d[i + 1]
    return np.array(d)


def solve_physical(scheme, k, grid: GridSpec, source: SourceSpec) -> DiscreteSolution:
    grid.require_even()
    st = stencil(scheme, k, grid)
    rhs = rhs_operator(scheme, source, k, grid)
    u = GridFunction(grid, thomas_solve(st.sub, st.diag, st.sup, rhs.values))
    return DiscreteSolution(grid, u, dst_forward(u))


def exact_solution_spectrum(source: SourceSpec, k, grid: GridSpec) -> SineSpectrum:
    """u_n = f_n / (k^2 - xi_n^2) for the continuous problem."""
    f_hat = source.spectrum(grid)
    coeffs = np.zeros(grid.size)
    nz = np.flatnonzero(f_hat.coeffs)
    if nz.size:
        xi = (nz + 1) * np.pi
        coeffs[nz] = np.atleast_1d(continuous_inverse_symbol(as_wavenumber(k), xi)) * f_hat.coeffs[nz]
    return SineSpectrum(grid, coeffs)

