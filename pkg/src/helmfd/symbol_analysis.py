"""Frequency-wise symbol error psi_p, its profiles, and the L2 / H1 error bounds.

    psi_p(xi_n) = |1/(k^2 - xi_n^2) - R^h(xi_n)/H^h(xi_n)| / xi_n^p

For a band-limited source, the L2 error is at most |f|_{H^p} max_n psi_p and
the H1 semi-norm error at most |f|_{H^p} max_n psi_{p-1}.  Both bounds are
attained by a single sine mode placed at the maximising frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DiscreteResonance, LadderError
from .schemes import (
    RESONANCE_RTOL,
    Scheme,
    WaveNumber,
    as_wavenumber,
    continuous_inverse_symbol,
    left_symbol,
    right_symbol,
)
from .spectral import GridSpec, SineSpectrum, weighted_norm


def default_p(scheme) -> int:
    """p = m - 2 for an m-th order scheme."""
    return Scheme.parse(scheme).order - 2


def discrete_multiplier(scheme, k, grid: GridSpec, xi) -> np.ndarray:
    """R^h/H^h at the given frequencies, guarding against a vanishing H^h."""
    kv = as_wavenumber(k).value
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    lhs = np.atleast_1d(left_symbol(scheme, k, grid, xi))
    bad = np.abs(lhs) < RESONANCE_RTOL * kv * kv
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise DiscreteResonance(round(xi[i] / math.pi), lhs[i])
    return np.atleast_1d(right_symbol(scheme, k, grid, xi)) / lhs


def symbol_error(scheme, k, grid: GridSpec, n) -> np.ndarray:
    """Signed per-mode error multiplier 1/(k^2-xi^2) - R^h/H^h at xi = n pi."""
    n = np.atleast_1d(np.asarray(n))
    if np.any((n < 1) | (n >= grid.N)):
        raise ValueError(f"mode indices must lie in 1..{grid.N - 1}")
    xi = n * np.pi
    return np.atleast_1d(continuous_inverse_symbol(k, xi)) - discrete_multiplier(scheme, k, grid, xi)


def psi(scheme, k, grid: GridSpec, p: int, n):
    """psi_p at mode(s) ``n``; a scalar for scalar ``n``."""
    scalar = np.ndim(n) == 0
    n_arr = np.atleast_1d(np.asarray(n))
    xi = n_arr * np.pi
    out = np.abs(symbol_error(scheme, k, grid, n_arr)) / xi**p
    return float(out[0]) if scalar else out


@dataclass(frozen=True, eq=False)
class SymbolErrorProfile:
    scheme: Scheme
    k: WaveNumber
    grid: GridSpec
    p: int
    xi: np.ndarray
    values: np.ndarray
    max_value: float
    argmax_n: int

    @property
    def n(self) -> np.ndarray:
        return self.grid.indices

    @property
    def xi_argmax(self) -> float:
        return self.argmax_n * math.pi

    def evanescent_max(self) -> float:
        """Largest psi over modes with xi_n > k (0 if there are none)."""
        mask = self.xi > self.k.value
        return float(self.values[mask].max()) if mask.any() else 0.0

    def propagating_max(self) -> float:
        """Largest psi over modes with xi_n < k (0 if there are none)."""
        mask = self.xi < self.k.value
        return float(self.values[mask].max()) if mask.any() else 0.0


def profile(scheme, k, grid: GridSpec, p: int | None = None) -> SymbolErrorProfile:
    scheme = Scheme.parse(scheme)
    k = as_wavenumber(k)
    if p is None:
        p = default_p(scheme)
    values = psi(scheme, k, grid, p, grid.indices)
    # np.argmax returns the first maximiser, i.e. ties go to the smallest n
    i = int(np.argmax(values))
    return SymbolErrorProfile(
        scheme=scheme,
        k=k,
        grid=grid,
        p=p,
        xi=grid.frequencies,
        values=values,
        max_value=float(values[i]),
        argmax_n=i + 1,
    )


def scaled_max(scheme, k, grid: GridSpec, p: int | None = None) -> float:
    """k^p max_n psi_p: the sharp-bound proxy when the maximum sits near k."""
    prof = profile(scheme, k, grid, p)
    return prof.k.value**prof.p * prof.max_value


@dataclass(frozen=True)
class ExponentFit:
    alpha: float
    step_alphas: tuple[float, ...]
    log2_ratios: tuple[float, ...]


def fit_k_exponent(m: int, rows) -> ExponentFit:
    """Estimate alpha in ``value ~ k^alpha h^m`` from a ladder of ``(k, grid, value)``.

    Each step has k doubling its pi multiple and N quadrupling.  Per step,
    ``alpha_j = (log r_j + m log(N_{j+1}/N_j)) / log(k_{j+1}/k_j)`` with r_j
    the value ratio; when k exactly doubles this is ``2m + log2 r_j``.
    The estimate is the mean of the step values.
    """
    rows = [(as_wavenumber(k), g if isinstance(g, GridSpec) else GridSpec(int(g)), float(v)) for k, g, v in rows]
    if len(rows) < 3:
        raise LadderError(f"need at least 3 ladder rows, got {len(rows)}")
    step_alphas = []
    log2_ratios = []
    for (k0, g0, v0), (k1, g1, v1) in zip(rows, rows[1:]):
        if k1.pi_multiple != 2 * k0.pi_multiple or k1.offset != k0.offset:
            raise LadderError(f"k does not double between {k0} and {k1}")
        if g1.N != 4 * g0.N:
            raise LadderError(f"N does not quadruple between {g0.N} and {g1.N}")
        if v0 <= 0 or v1 <= 0:
            raise LadderError("ladder values must be positive")
        log_ratio = math.log(v1 / v0)
        log2_ratios.append(log_ratio / math.log(2.0))
        step_alphas.append((log_ratio + m * math.log(g1.N / g0.N)) / math.log(k1.value / k0.value))
    return ExponentFit(
        alpha=float(np.mean(step_alphas)),
        step_alphas=tuple(step_alphas),
        log2_ratios=tuple(log2_ratios),
    )


@dataclass(frozen=True)
class BoundReport:
    l2_bound: float
    h1_bound: float
    f_seminorm: float
    p: int


def theorem1_bounds(scheme, k, grid: GridSpec, p: int | None, f_hat: SineSpectrum) -> BoundReport:
    """|f|_{H^p} max psi_p (L2) and |f|_{H^p} max psi_{p-1} (H1 semi-norm)."""
    scheme = Scheme.parse(scheme)
    if p is None:
        p = default_p(scheme)
    if f_hat.grid != grid:
        raise ValueError("source spectrum lives on a different grid")
    grid.require_even()
    fs = weighted_norm(f_hat, p)
    psi_p = psi(scheme, k, grid, p, grid.indices)
    psi_pm1 = psi_p * grid.frequencies
    return BoundReport(
        l2_bound=fs * float(psi_p.max()),
        h1_bound=fs * float(psi_pm1.max()),
        f_seminorm=fs,
        p=p,
    )
