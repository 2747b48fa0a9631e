"""Error measurements and the three sweep families (h-refinement, ladder, fixed kh).

All error norms are evaluated in the sine-coefficient domain by Parseval's
identity; nothing here integrates synthesized functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .schemes import Scheme, WaveNumber, as_wavenumber
from .solver import exact_solution_spectrum, solve_spectral
from .sources import SourceSpec, mixed_source, monochromatic_source
from .spectral import GridSpec, SineSpectrum, weighted_coeff_norm
from .symbol_analysis import (
    ExponentFit,
    SymbolErrorProfile,
    default_p,
    fit_k_exponent,
    profile,
    psi,
    theorem1_bounds,
)

DEFAULT_KH_RANGE = (2.0**-7, 1.0)
LADDER_BASE = WaveNumber(5, 1.0)
LADDER_STEPS = 4
# smallest even N with kh <= 0.2 at k = 5pi+1
CLS_LADDER_N0 = 84
# smallest even N with kh <= 1 at k = 5pi+1; lower starts put df6 on the round-off floor
DF_LADDER_N0 = 18
HREF_NS = tuple(CLS_LADDER_N0 * 2**j for j in range(5))


@dataclass(frozen=True, eq=False)
class ErrorReport:
    l2_error: float
    h1_semi_error: float
    per_mode: np.ndarray  # rows of (n, |u_n - u^h_n|)


def error_report(exact: SineSpectrum, discrete: SineSpectrum) -> ErrorReport:
    if exact.grid != discrete.grid:
        raise ValueError("spectra live on different grids")
    diff = exact.coeffs - discrete.coeffs
    per_mode = np.column_stack([exact.grid.indices, np.abs(diff)])
    return ErrorReport(
        l2_error=weighted_coeff_norm(diff, 0),
        h1_semi_error=weighted_coeff_norm(diff, 1),
        per_mode=per_mode,
    )


def scaling_exponents(scheme) -> dict[str, tuple[int, int]]:
    """(k exponent, h exponent) of the expected error law per norm."""
    scheme = Scheme.parse(scheme)
    m = scheme.order
    if scheme is Scheme.CLS:
        return {"l2": (2, 2), "h1": (3, 2)}
    return {"l2": (m - 1, m), "h1": (m, m)}


def even_grid(N: int) -> GridSpec:
    """Round up to the next even N (at least 4)."""
    N = max(int(N), 4)
    return GridSpec(N + (N % 2))


def grid_for_kh(k, kh: float) -> GridSpec:
    """Smallest even N with k/N <= kh."""
    kv = as_wavenumber(k).value
    return even_grid(math.ceil(kv / kh))


def resolve_source(source, k) -> SourceSpec:
    if isinstance(source, SourceSpec):
        return source
    if source in (None, "mono", "monochromatic"):
        return monochromatic_source(k)
    if source == "mixed":
        return mixed_source()
    if callable(source):
        return source(k)
    raise ValueError(f"unknown source {source!r}")


@dataclass(frozen=True)
class SweepRow:
    scheme: Scheme
    k: WaveNumber
    N: int
    kh: float
    l2_error: float
    h1_semi_error: float
    l2_scaled: float
    h1_scaled: float
    bound_l2: float
    bound_h1: float
    floor: bool = False

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.N)

    def key(self) -> tuple[str, int, float, int]:
        return (self.scheme.value, self.k.pi_multiple, self.k.offset, self.N)


def run_case(scheme, k, N, source=None, p: int | None = None) -> SweepRow:
    """Solve one (scheme, k, N) case spectrally and measure it against the exact solution."""
    scheme = Scheme.parse(scheme)
    k = as_wavenumber(k)
    grid = N if isinstance(N, GridSpec) else GridSpec(int(N))
    grid.require_even()
    src = resolve_source(source, k)
    f_hat = src.spectrum(grid)
    exact = exact_solution_spectrum(src, k, grid)
    disc = solve_spectral(scheme, k, grid, f_hat)
    err = error_report(exact, disc.spectrum)
    bounds = theorem1_bounds(scheme, k, grid, p, f_hat)
    kv, h = k.value, grid.h
    law = scaling_exponents(scheme)
    return SweepRow(
        scheme=scheme,
        k=k,
        N=grid.N,
        kh=kv * h,
        l2_error=err.l2_error,
        h1_semi_error=err.h1_semi_error,
        l2_scaled=err.l2_error / (kv ** law["l2"][0] * h ** law["l2"][1]),
        h1_scaled=err.h1_semi_error / (kv ** law["h1"][0] * h ** law["h1"][1]),
        bound_l2=bounds.l2_bound,
        bound_h1=bounds.h1_bound,
    )


def flag_floor(rows: list[SweepRow]) -> list[SweepRow]:
    """Mark rows that sit on the round-off floor.

    A row is flagged when refining from the previous row fails to cut the L2
    error by at least 2^(m/2); every later row is flagged as well.
    """
    out = []
    floored = False
    for i, row in enumerate(rows):
        if i and not floored:
            prev = rows[i - 1].l2_error
            need = 2.0 ** (row.scheme.order / 2.0)
            floored = row.l2_error <= 0 or prev / row.l2_error < need
        out.append(replace(row, floor=floored))
    return out


def sweep_h_refinement(scheme, k, Ns, source=None, p: int | None = None) -> list[SweepRow]:
    """Fixed k, increasing N (odd N rounded up to even)."""
    if not len(Ns):
        raise ValueError("empty N list")
    rows = [run_case(scheme, k, even_grid(N), source, p) for N in Ns]
    return flag_floor(rows)


def h_slope(rows: list[SweepRow]) -> float:
    """Mean per-step slope of log2(l2_error) against log2(N), skipping floored rows."""
    good = [r for r in rows if not r.floor]
    if len(good) < 2:
        raise ValueError("need at least two rows off the round-off floor")
    slopes = [
        math.log2(b.l2_error / a.l2_error) / math.log2(b.N / a.N) for a, b in zip(good, good[1:])
    ]
    return float(np.mean(slopes))


def ladder_points(k0, N0: int, steps: int) -> list[tuple[WaveNumber, GridSpec]]:
    """k_j = 2^j n_k pi + offset, N_j = 4^j N0 (N0 rounded up to even)."""
    k = as_wavenumber(k0)
    g = even_grid(N0)
    points = []
    for _ in range(steps + 1):
        points.append((k, g))
        k, g = k.doubled(), GridSpec(4 * g.N)
    return points


def sweep_ladder(scheme, k0, N0: int, steps: int = LADDER_STEPS, source=None, p: int | None = None) -> list[SweepRow]:
    """k doubles while N quadruples; kh halves at every step."""
    if steps < 1:
        raise ValueError("a ladder needs at least one step")
    rows = [run_case(scheme, k, g, source, p) for k, g in ladder_points(k0, N0, steps)]
    return flag_floor(rows)


def ladder_fits(rows: list[SweepRow]) -> dict[str, ExponentFit]:
    """Fitted k-exponents for both norms, excluding floored rows."""
    good = [r for r in rows if not r.floor]
    m = rows[0].scheme.order
    return {
        "l2": fit_k_exponent(m, [(r.k, r.grid, r.l2_error) for r in good]),
        "h1": fit_k_exponent(m, [(r.k, r.grid, r.h1_semi_error) for r in good]),
    }


def is_ladder(rows: list[SweepRow]) -> bool:
    if len(rows) < 3:
        return False
    return all(
        b.k.pi_multiple == 2 * a.k.pi_multiple and b.k.offset == a.k.offset and b.N == 4 * a.N
        for a, b in zip(rows, rows[1:])
    )


@dataclass(frozen=True, eq=False)
class KhFixedResult:
    """Symbol profiles at one k of a fixed-kh family.

    ``evanescent_max_p`` is the largest psi_p over xi_n > k and
    ``evanescent_max_pm1`` the same for psi_{p-1}.
    """

    k: WaveNumber
    grid: GridSpec
    profile_p: SymbolErrorProfile
    profile_pm1: SymbolErrorProfile
    evanescent_max_p: float
    evanescent_max_pm1: float

    @property
    def kh(self) -> float:
        return self.k.value * self.grid.h


def sweep_kh_fixed(scheme, kh: float, ks, p: int | None = None) -> list[KhFixedResult]:
    """Profiles for increasing k with N chosen so that k/N stays at ``kh``."""
    scheme = Scheme.parse(scheme)
    if p is None:
        p = default_p(scheme)
    out = []
    for k in ks:
        k = as_wavenumber(k)
        grid = grid_for_kh(k, kh)
        prof_p = profile(scheme, k, grid, p)
        prof_pm1 = profile(scheme, k, grid, p - 1)
        out.append(
            KhFixedResult(
                k=k,
                grid=grid,
                profile_p=prof_p,
                profile_pm1=prof_pm1,
                evanescent_max_p=prof_p.evanescent_max(),
                evanescent_max_pm1=prof_pm1.evanescent_max(),
            )
        )
    return out


def preasymptotic_psi0(k) -> float:
    """psi_0 of the classical scheme at xi = k - 1, on h = 1/ceil(k).

    The grid here may be odd; only the symbol is evaluated.
    """
    k = as_wavenumber(k)
    if k.offset != 1.0:
        raise ValueError("the preasymptotic table uses k = n_k pi + 1")
    grid = GridSpec(math.ceil(k.value))
    return psi(Scheme.CLS, k, grid, 0, k.pi_multiple)


def ladder_wavenumbers(base=LADDER_BASE, steps: int = LADDER_STEPS) -> list[WaveNumber]:
    ks = [as_wavenumber(base)]
    for _ in range(steps):
        ks.append(ks[-1].doubled())
    return ks
