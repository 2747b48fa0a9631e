"""The four 3-point schemes: symbols, stencils and right-hand-side operators.

``cls`` is the classical centred scheme.  ``df2``, ``df4`` and ``df6`` share
the dispersion-free left operator, the centred second difference rescaled by
``k^2 / kt^2`` with the modified wavenumber ``kt = (2/h) sin(kh/2)``.  They
differ only in the right-hand side.  Symbols are the multipliers the operators
apply to the grid mode ``sin(xi_n x)``, ``xi_n = n pi``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ResonanceError
from .sources import SourceSpec
from .spectral import GridFunction, GridSpec

RESONANCE_RTOL = 1e-12
DEGENERATE_KT_RTOL = 1e-14


class Scheme(str, enum.Enum):
    CLS = "cls"
    DF2 = "df2"
    DF4 = "df4"
    DF6 = "df6"

    @property
    def order(self) -> int:
        return _ORDERS[self]

    @property
    def dispersion_free(self) -> bool:
        return self is not Scheme.CLS

    @classmethod
    def parse(cls, value) -> "Scheme":
        if isinstance(value, Scheme):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown scheme {value!r}; expected one of cls, df2, df4, df6") from None

    def __str__(self) -> str:
        return self.value


_ORDERS = {Scheme.CLS: 2, Scheme.DF2: 2, Scheme.DF4: 4, Scheme.DF6: 6}


_K_PATTERN = re.compile(
    r"""^\s*(?P<n>\d+)\s*\*?\s*pi
        (?:\s*(?P<sign>[+-])\s*(?P<off>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))?\s*$""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class WaveNumber:
    """k = pi_multiple * pi + offset, with pi kept symbolic.

    Because pi is irrational, a nonzero finite float offset is never an
    integer multiple of pi, so ``offset != 0`` is an exact certificate that
    k is not in pi*Z.
    """

    pi_multiple: int
    offset: float

    def __post_init__(self):
        if isinstance(self.pi_multiple, bool) or not isinstance(self.pi_multiple, (int, np.integer)):
            raise TypeError("pi_multiple must be an integer")
        if self.pi_multiple < 0:
            raise ValueError("pi_multiple must be nonnegative")
        offset = float(self.offset)
        if not math.isfinite(offset):
            raise ValueError("offset must be finite")
        if offset == 0.0:
            raise ResonanceError(f"k = {self.pi_multiple}pi lies in pi*Z")
        object.__setattr__(self, "pi_multiple", int(self.pi_multiple))
        object.__setattr__(self, "offset", offset)
        if self.value <= 0:
            raise ValueError(f"k must be positive, got {self.value}")

    @property
    def value(self) -> float:
        return self.pi_multiple * math.pi + self.offset

    def doubled(self) -> "WaveNumber":
        """Next ladder rung: the pi multiple doubles, the offset is kept."""
        return WaveNumber(2 * self.pi_multiple, self.offset)

    @classmethod
    def parse(cls, text: str) -> "WaveNumber":
        """Parse ``"5pi+1"``, ``"3pi-0.5"`` or a plain real such as ``"2.5"``."""
        m = _K_PATTERN.match(text)
        if m:
            off = 0.0
            if m.group("off") is not None:
                off = float(m.group("off"))
                if m.group("sign") == "-":
                    off = -off
            return cls(int(m.group("n")), off)
        try:
            value = float(text)
        except ValueError:
            raise ValueError(f"cannot parse wavenumber {text!r}") from None
        return cls(0, value)

    def __str__(self) -> str:
        if self.pi_multiple == 0:
            return f"{self.offset:g}"
        sign = "+" if self.offset > 0 else "-"
        return f"{self.pi_multiple}pi{sign}{abs(self.offset):g}"

    def __float__(self) -> float:
        return self.value


def as_wavenumber(k) -> WaveNumber:
    if isinstance(k, WaveNumber):
        return k
    if isinstance(k, str):
        return WaveNumber.parse(k)
    return WaveNumber(0, float(k))


@dataclass(frozen=True)
class TridiagonalStencil:
    sub: float
    diag: float
    sup: float

    def apply(self, values) -> np.ndarray:
        """Apply to interior values with zero Dirichlet data at both ends."""
        u = np.asarray(values, dtype=np.float64)
        out = self.diag * u
        out[1:] += self.sub * u[:-1]
        out[:-1] += self.sup * u[1:]
        return out


def modified_wavenumber(k, grid: GridSpec) -> float:
    """kt = (2/h) sin(kh/2)."""
    kv = as_wavenumber(k).value
    h = grid.h
    kt = (2.0 / h) * math.sin(0.5 * kv * h)
    if abs(kt) < DEGENERATE_KT_RTOL * kv:
        raise ResonanceError(f"modified wavenumber degenerates at kh={kv * h:.6g}")
    return kt


def continuous_inverse_symbol(k, xi):
    """1 / (k^2 - xi^2), the multiplier taking f_n to u_n."""
    kv = as_wavenumber(k).value
    xi = np.asarray(xi, dtype=np.float64)
    denom = kv * kv - xi * xi
    if np.any(np.abs(denom) < RESONANCE_RTOL * kv * kv):
        raise ResonanceError(f"k^2 - xi^2 vanishes for k={kv}")
    out = 1.0 / denom
    return float(out) if out.ndim == 0 else out


def _dispersion_scale(scheme: Scheme, k, grid: GridSpec) -> float:
    if scheme is Scheme.CLS:
        return 1.0
    kv = as_wavenumber(k).value
    kt = modified_wavenumber(k, grid)
    return (kv * kv) / (kt * kt)


def left_symbol(scheme, k, grid: GridSpec, xi):
    """H^h(xi) = k^2 - c (4/h^2) sin^2(xi h/2), c = 1 (cls) or k^2/kt^2 (df)."""
    scheme = Scheme.parse(scheme)
    kv = as_wavenumber(k).value
    h = grid.h
    xi = np.asarray(xi, dtype=np.float64)
    c = _dispersion_scale(scheme, k, grid)
    out = kv * kv - c * (4.0 / (h * h)) * np.sin(0.5 * xi * h) ** 2
    return float(out) if out.ndim == 0 else out


def _rhs_coefficients(scheme: Scheme, k, grid: GridSpec) -> tuple[float, float]:
    """Weights (a2, a4) of f'' and f'''' in R^h f = f + a2 f'' + a4 f''''."""
    if scheme in (Scheme.CLS, Scheme.DF2):
        return 0.0, 0.0
    kv = as_wavenumber(k).value
    kt2 = modified_wavenumber(k, grid) ** 2
    k2 = kv * kv
    a2 = 1.0 / kt2 - 1.0 / k2
    if scheme is Scheme.DF4:
        return a2, 0.0
    h = grid.h
    a4 = 1.0 / (k2 * k2) + (h * h / 12.0 - 1.0 / k2) / kt2
    return a2, a4


def right_symbol(scheme, k, grid: GridSpec, xi):
    """R^h(xi) = 1 - a2 xi^2 + a4 xi^4, the transform of ``rhs_operator``.

    For df6 this keeps the 1/k^4 part of the f'''' weight, which is what
    makes the scheme sixth order.
    """
    scheme = Scheme.parse(scheme)
    xi = np.asarray(xi, dtype=np.float64)
    a2, a4 = _rhs_coefficients(scheme, k, grid)
    xi2 = xi * xi
    out = 1.0 - a2 * xi2 + a4 * xi2 * xi2
    return float(out) if out.ndim == 0 else np.asarray(out, dtype=np.float64)


def stencil(scheme, k, grid: GridSpec) -> TridiagonalStencil:
    scheme = Scheme.parse(scheme)
    kv = as_wavenumber(k).value
    c = _dispersion_scale(scheme, k, grid)
    off = c / grid.h**2
    return TridiagonalStencil(sub=off, diag=kv * kv - 2.0 * off, sup=off)


def rhs_operator(scheme, source: SourceSpec, k, grid: GridSpec) -> GridFunction:
    """Grid samples of R^h f with exact derivatives of the band-limited source."""
    scheme = Scheme.parse(scheme)
    source.check_band_limit(grid)
    a2, a4 = _rhs_coefficients(scheme, k, grid)
    values = source.derivative_samples(grid, 0)
    if a2 != 0.0:
        values = values + a2 * source.derivative_samples(grid, 2)
    if a4 != 0.0:
        values = values + a4 * source.derivative_samples(grid, 4)
    return GridFunction(grid, values)
