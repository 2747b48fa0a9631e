"""Exit criteria for the package, shared by ``helmfd verify`` and the test suite.

Every check returns a :class:`CriterionResult`; tolerances are fixed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .experiments import (
    CLS_LADDER_N0,
    DF_LADDER_N0,
    HREF_NS,
    LADDER_BASE,
    grid_for_kh,
    h_slope,
    ladder_fits,
    ladder_points,
    ladder_wavenumbers,
    preasymptotic_psi0,
    run_case,
    sweep_h_refinement,
    sweep_kh_fixed,
    sweep_ladder,
)
from .schemes import Scheme, WaveNumber, left_symbol
from .solver import solve_physical, solve_spectral
from .sources import mixed_source, monochromatic_source, single_mode
from .spectral import (
    GridFunction,
    GridSpec,
    dst_forward,
    dst_forward_direct,
    sine_synthesis,
    weighted_norm,
)
from .symbol_analysis import default_p, profile

PSI0_TABLE = {
    5: 0.0106384,
    10: 0.00832166,
    20: 0.00558938,
    40: 0.00329617,
    80: 0.00180466,
}
PSI0_RTOL = 1e-3

CLS_ALPHA = {"l2": (2.0, 0.2), "h1": (3.0, 0.2)}
CLS_HREF_SLOPE = (-2.0, 0.1)
DF_ALPHA_L2 = {Scheme.DF2: (1.0, 0.2), Scheme.DF4: (3.0, 0.3), Scheme.DF6: (5.0, 0.3)}
DF_H1_SPREAD = 0.15

BOUND_FACTOR = 1.0 + 1e-10
ATTAIN_RTOL = 1e-10
ORACLE_RTOL = 1e-10
DF_ROOT_RTOL = 1e-10
SPECTRAL_TOL = 1e-12

ORACLE_KS = tuple(WaveNumber(n, 1.0) for n in (5, 10, 20, 40))
ORACLE_NS = (16, 32, 64, 128, 162, 256, 512, 1024)
DF_ROOT_KH = (0.05, 0.1, 0.2, 0.5, 1.0)
EVANESCENT_KH = 0.5
DF_SCHEMES = (Scheme.DF2, Scheme.DF4, Scheme.DF6)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.title}"


def _within(value: float, target: tuple[float, float]) -> bool:
    return abs(value - target[0]) <= target[1]


def check_preasymptotic_table() -> CriterionResult:
    res = CriterionResult(1, "preasymptotic psi_0(k-1) table", True)
    for nk, expected in PSI0_TABLE.items():
        got = preasymptotic_psi0(WaveNumber(nk, 1.0))
        rel = abs(got / expected - 1.0)
        ok = rel <= PSI0_RTOL
        res.passed &= ok
        res.details.append(f"k={nk}pi+1 psi0={got:.9g} expected={expected} rel={rel:.2e} {'ok' if ok else 'BAD'}")
    return res


def check_classical_orders() -> CriterionResult:
    res = CriterionResult(2, "classical scheme orders (k^2h^2 L2, k^3h^2 H1, h^2)", True)
    rows = sweep_ladder(Scheme.CLS, LADDER_BASE, CLS_LADDER_N0)
    fits = ladder_fits(rows)
    for norm in ("l2", "h1"):
        ok = _within(fits[norm].alpha, CLS_ALPHA[norm])
        res.passed &= ok
        res.details.append(
            f"ladder alpha_{norm}={fits[norm].alpha:.4f} target {CLS_ALPHA[norm][0]}+-{CLS_ALPHA[norm][1]}"
            f" {'ok' if ok else 'BAD'}"
        )
    slope = h_slope(sweep_h_refinement(Scheme.CLS, LADDER_BASE, HREF_NS))
    ok = _within(slope, CLS_HREF_SLOPE)
    res.passed &= ok
    res.details.append(f"h-refinement slope={slope:.4f} target -2+-0.1 {'ok' if ok else 'BAD'}")
    return res


def h1_spread(rows) -> float:
    """(max - min)/min of the H1 scaled column."""
    vals = [r.h1_scaled for r in rows]
    return max(vals) / min(vals) - 1.0


def check_dispersion_free_orders() -> CriterionResult:
    res = CriterionResult(3, "dispersion-free orders (k^(m-1)h^m L2, flat H1/(k^m h^m))", True)
    for s in DF_SCHEMES:
        rows = sweep_ladder(s, LADDER_BASE, DF_LADDER_N0)
        floored = sum(r.floor for r in rows)
        fits = ladder_fits(rows)
        ok = _within(fits["l2"].alpha, DF_ALPHA_L2[s])
        res.passed &= ok
        res.details.append(
            f"{s} alpha_l2={fits['l2'].alpha:.4f} target {DF_ALPHA_L2[s][0]}+-{DF_ALPHA_L2[s][1]}"
            f" (floored rows {floored}) {'ok' if ok else 'BAD'}"
        )
        spread = h1_spread(rows)
        ok = spread < DF_H1_SPREAD
        res.passed &= ok
        scaled = ", ".join(f"{r.h1_scaled:.4g}" for r in rows)
        res.details.append(f"{s} H1 scaled [{scaled}] spread={spread:.3f} limit {DF_H1_SPREAD} {'ok' if ok else 'BAD'}")
    return res


def bound_cases():
    """(scheme, k, N, source) cases used for the bound checks."""
    for s in Scheme:
        for N0 in (DF_LADDER_N0, CLS_LADDER_N0):
            for k, g in ladder_points(LADDER_BASE, N0, 3):
                yield s, k, g, monochromatic_source(k)
        for k, g in ladder_points(LADDER_BASE, mixed_source().min_grid(), 3):
            yield s, k, g, mixed_source()


def check_error_bounds() -> CriterionResult:
    res = CriterionResult(4, "error bounds hold and are attained", True)
    count = worst = 0
    worst_ratio = 0.0
    for s, k, g, src in bound_cases():
        row = run_case(s, k, g, src)
        count += 1
        ratio = max(row.l2_error / row.bound_l2, row.h1_semi_error / row.bound_h1)
        worst_ratio = max(worst_ratio, ratio)
        if ratio > BOUND_FACTOR:
            worst += 1
    res.passed &= worst == 0
    res.details.append(f"{count} cases, max error/bound = {worst_ratio:.12f}, violations {worst}")
    attain_worst = 0.0
    for s in Scheme:
        p = default_p(s)
        for k, g in ladder_points(LADDER_BASE, DF_LADDER_N0, 3):
            n_star = profile(s, k, g, p).argmax_n
            row = run_case(s, k, g, single_mode(n_star), p)
            attain_worst = max(attain_worst, abs(row.l2_error / row.bound_l2 - 1.0))
            n_star = profile(s, k, g, p - 1).argmax_n
            row = run_case(s, k, g, single_mode(n_star), p)
            attain_worst = max(attain_worst, abs(row.h1_semi_error / row.bound_h1 - 1.0))
    ok = attain_worst <= ATTAIN_RTOL
    res.passed &= ok
    res.details.append(f"attainability: max |error/bound - 1| = {attain_worst:.2e} {'ok' if ok else 'BAD'}")
    return res


def oracle_cases():
    for s in Scheme:
        for k in ORACLE_KS:
            for N in ORACLE_NS:
                if k.value / N > 1.0:
                    continue
                for src in (monochromatic_source(k), mixed_source()):
                    if src.max_mode < N:
                        yield s, k, GridSpec(N), src


def check_oracle_equivalence() -> CriterionResult:
    res = CriterionResult(5, "spectral and tridiagonal solvers agree", True)
    worst = 0.0
    count = 0
    for s, k, g, src in oracle_cases():
        a = solve_spectral(s, k, g, src.spectrum(g)).spectrum
        b = solve_physical(s, k, g, src).spectrum
        rel = weighted_norm(type(a)(g, a.coeffs - b.coeffs), 0) / weighted_norm(a, 0)
        worst = max(worst, rel)
        count += 1
    res.passed = worst <= ORACLE_RTOL
    res.details.append(f"{count} cases, max relative L2 difference {worst:.2e} (limit {ORACLE_RTOL:g})")
    return res


def check_dispersion_free_root() -> CriterionResult:
    res = CriterionResult(6, "dispersion-free left symbol vanishes at xi = k", True)
    worst = 0.0
    for s in DF_SCHEMES:
        for k in ladder_wavenumbers():
            for kh in DF_ROOT_KH:
                g = grid_for_kh(k, kh)
                worst = max(worst, abs(left_symbol(s, k, g, k.value)) / k.value**2)
    res.passed = worst <= DF_ROOT_RTOL
    res.details.append(f"max |H(k)|/k^2 = {worst:.2e} (limit {DF_ROOT_RTOL:g})")
    return res


def check_spectral_substrate(seed: int = 20240517) -> CriterionResult:
    res = CriterionResult(7, "sine transform round trip, Parseval, fast path", True)
    rng = np.random.default_rng(seed)
    rt = pv = fd = 0.0
    for e in range(2, 13):
        g = GridSpec(2**e)
        f = GridFunction(g, rng.standard_normal(g.size))
        spec_direct = dst_forward_direct(f)
        spec_fast = dst_forward(f)
        fd = max(fd, np.max(np.abs(spec_fast.coeffs - spec_direct.coeffs)) / np.max(np.abs(spec_direct.coeffs)))
        if g.N > 1024:
            continue
        rt = max(rt, float(np.max(np.abs(sine_synthesis(spec_direct, g.points) - f.values))))
        lhs = weighted_norm(spec_direct, 0) ** 2
        rhs = float(np.dot(f.values, f.values)) / g.N
        pv = max(pv, abs(lhs - rhs) / rhs)
    for name, val in (("round trip", rt), ("Parseval", pv), ("fast vs direct", fd)):
        ok = val <= SPECTRAL_TOL
        res.passed &= ok
        res.details.append(f"{name}: {val:.2e} {'ok' if ok else 'BAD'}")
    return res


def check_evanescent_decay() -> CriterionResult:
    res = CriterionResult(8, "evanescent symbol error shrinks with k at fixed kh", True)
    ks = ladder_wavenumbers()
    for s in DF_SCHEMES:
        results = sweep_kh_fixed(s, EVANESCENT_KH, ks)
        p = default_p(s)
        for label, vals in (
            ("psi_p", [r.evanescent_max_p for r in results]),
            ("psi_pm1", [r.evanescent_max_pm1 for r in results]),
            ("k^p psi_pm1", [r.k.value**p * r.evanescent_max_pm1 for r in results]),
        ):
            ok = all(b < a for a, b in zip(vals, vals[1:]))
            res.passed &= ok
            res.details.append(f"{s} {label}: " + ", ".join(f"{v:.3e}" for v in vals) + (" ok" if ok else " BAD"))
    return res


CHECKS = (
    check_preasymptotic_table,
    check_classical_orders,
    check_dispersion_free_orders,
    check_error_bounds,
    check_oracle_equivalence,
    check_dispersion_free_root,
    check_spectral_substrate,
    check_evanescent_decay,
)


def run_all() -> list[CriterionResult]:
    return [check() for check in CHECKS]


def format_report(results: list[CriterionResult]) -> str:
    lines = []
    for r in results:
        lines.append(r.line())
        lines.extend(f"    {d}" for d in r.details)
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
