"""Sine-series transforms on the uniform grid of (0, 1) and Parseval norms.

Grid functions live on the interior nodes ``x_j = j/N``, ``j = 1..N-1``; the
homogeneous Dirichlet values at ``x_0`` and ``x_N`` are implicit.  The forward
transform is

    v_n = (2/N) * sum_j v(x_j) sin(n pi x_j),      n = 1..N-1,

and synthesis ``v(x) = sum_n v_n sin(n pi x)`` carries no factor, so that the
series reproduces the grid values and extends them to all of (0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with ``N`` subintervals of width ``h = 1/N``.

    Any ``N >= 4`` is accepted so that symbols can be evaluated on odd grids;
    paths that rely on the error bounds call :meth:`require_even`.
    """

    N: int

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, (int, np.integer)):
            raise TypeError(f"N must be an integer, got {self.N!r}")
        if self.N < 4:
            raise ValueError(f"N must be >= 4, got {self.N}")
        object.__setattr__(self, "N", int(self.N))

    @property
    def h(self) -> float:
        return 1.0 / self.N

    @property
    def is_even(self) -> bool:
        return self.N % 2 == 0

    @property
    def size(self) -> int:
        """Number of interior nodes (and of sine modes)."""
        return self.N - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(1, self.N)

    @property
    def points(self) -> np.ndarray:
        return self.indices / self.N

    @property
    def frequencies(self) -> np.ndarray:
        """xi_n = n pi for n = 1..N-1."""
        return self.indices * np.pi

    def require_even(self) -> "GridSpec":
        if not self.is_even:
            raise ValueError(f"an even N is required here, got N={self.N}")
        return self

    @classmethod
    def from_h(cls, h: float) -> "GridSpec":
        N = round(1.0 / h)
        if abs(N * h - 1.0) > 1e-12:
            raise ValueError(f"1/h is not an integer for h={h}")
        return cls(N)


def _as_vector(values, grid: GridSpec, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != grid.size:
        raise ValueError(f"{what} must have length N-1={grid.size}, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Values at the interior nodes x_1..x_{N-1}."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_vector(self.values, self.grid, "values"))


@dataclass(frozen=True, eq=False)
class SineSpectrum:
    """Coefficients v_n, n = 1..N-1, of a sine series on (0, 1)."""

    grid: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_vector(self.coeffs, self.grid, "coeffs"))

    @classmethod
    def zeros(cls, grid: GridSpec) -> "SineSpectrum":
        return cls(grid, np.zeros(grid.size))

    @classmethod
    def unit(cls, grid: GridSpec, n: int, amplitude: float = 1.0) -> "SineSpectrum":
        coeffs = np.zeros(grid.size)
        coeffs[n - 1] = amplitude
        return cls(grid, coeffs)


def sine_matrix(grid: GridSpec) -> np.ndarray:
    """S[n-1, j-1] = sin(n pi j / N).

    The product n*j is reduced mod 2N before scaling so every entry is the
    sine of an angle in [0, 2 pi), which keeps large-N entries accurate.
    """
    idx = grid.indices
    phase = np.outer(idx, idx) % (2 * grid.N)
    return np.sin(np.pi * phase / grid.N)


def dst_forward_direct(g: GridFunction) -> SineSpectrum:
    """O(N^2) evaluation of the defining sum; the reference for the fast path."""
    grid = g.grid
    return SineSpectrum(grid, (2.0 / grid.N) * (sine_matrix(grid) @ g.values))


def dst_forward(g: GridFunction, method: str = "fast") -> SineSpectrum:
    """Discrete sine transform with the (2/N) forward normalization.

    ``method="fast"`` uses a DST-I; ``method="direct"`` sums the definition.
    """
    if method == "direct":
        return dst_forward_direct(g)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    # scipy's DST-I of length N-1 is 2 * sum_j v_j sin(pi n j / N)
    coeffs = scipy.fft.dst(g.values, type=1) / g.grid.N
    return SineSpectrum(g.grid, coeffs)


def dst_inverse(s: SineSpectrum, method: str = "fast") -> GridFunction:
    """Grid values of the sine series, i.e. the inverse of :func:`dst_forward`."""
    if method == "direct":
        return GridFunction(s.grid, sine_matrix(s.grid).T @ s.coeffs)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    return GridFunction(s.grid, scipy.fft.dst(s.coeffs, type=1) / 2.0)


def sine_synthesis(s: SineSpectrum, x):
    """Evaluate ``sum_n v_n sin(n pi x)`` at ``x`` (scalar or array) in [0, 1]."""
    xs = np.asarray(x, dtype=np.float64)
    if np.any((xs < 0.0) | (xs > 1.0)):
        raise ValueError("x must lie in [0, 1]")
    vals = np.sin(np.pi * np.multiply.outer(xs, s.grid.indices)) @ s.coeffs
    return float(vals) if vals.ndim == 0 else vals


def weighted_coeff_norm(coeffs, order: int) -> float:
    """sqrt((1/2) sum_n (n pi)^(2 order) |c_n|^2) for coefficients c_1, c_2, ..."""
    if order < -1:
        raise ValueError(f"order must be >= -1, got {order}")
    c = np.asarray(coeffs, dtype=np.float64)
    xi = np.pi * np.arange(1, c.shape[0] + 1)
    weighted = c * xi**order
    return float(np.sqrt(0.5 * np.dot(weighted, weighted)))


def weighted_norm(s: SineSpectrum, order: int) -> float:
    """Parseval norm of a sine series.

    ``order=0`` is the L2 norm on (0, 1), ``order=1`` the H1 semi-norm and
    ``order=p`` the H^p semi-norm.  ``order=-1`` is accepted for the
    psi_{p-1} bookkeeping used with ``p = 0``.
    """
    return weighted_coeff_norm(s.coeffs, order)
