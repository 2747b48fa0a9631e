"""Canonical figure configurations and their panel tables.

Each figure becomes a list of :class:`Panel` objects: a table of rows plus a
declarative plot description (axes, scales, series column).  Nothing here
renders images or touches the filesystem.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .experiments import (
    CLS_LADDER_N0,
    DF_LADDER_N0,
    HREF_NS,
    LADDER_BASE,
    grid_for_kh,
    ladder_points,
    ladder_wavenumbers,
    run_case,
    scaling_exponents,
    sweep_kh_fixed,
)
from .schemes import Scheme
from .sources import mixed_source
from .spectral import GridSpec
from .symbol_analysis import default_p, profile

FIG3_KH = 0.5
FIG2_KH = tuple(2.0**-i for i in range(8))


@dataclass
class Panel:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    x: str = ""
    y: str = ""
    series: str | None = "series"
    xscale: str = "log"
    yscale: str = "log"
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""

    def description(self, filename: str) -> dict:
        return {
            "name": self.name,
            "file": filename,
            "title": self.title,
            "x": self.x,
            "y": self.y,
            "series": self.series,
            "xscale": self.xscale,
            "yscale": self.yscale,
            "xlabel": self.xlabel,
            "ylabel": self.ylabel,
        }


PROFILE_COLUMNS = ("series", "k", "N", "n", "xi", "value")


def _profile_panels(name: str, scheme: Scheme, points, title: str) -> list[Panel]:
    p = default_p(scheme)
    col1 = Panel(
        f"{name}_col1", PROFILE_COLUMNS, x="xi", y="value",
        xlabel="xi_n", ylabel=f"k^{p} psi_{p}", title=f"{title}: L2 symbol error",
    )
    col2 = Panel(
        f"{name}_col2", PROFILE_COLUMNS, x="xi", y="value",
        xlabel="xi_n", ylabel=f"k^{p} psi_{p - 1}", title=f"{title}: H1 symbol error",
    )
    col3 = Panel(
        f"{name}_col3",
        ("series", "k", "N", "kh", "kp_max_psi_p", "kp_max_psi_pm1", "argmax_n_p", "argmax_n_pm1"),
        x="kh", y="kp_max_psi_p", series=None,
        xlabel="kh", ylabel="k^p max psi", title=f"{title}: scaled maxima",
    )
    for k, g in points:
        label = f"k={k},N={g.N}"
        scale = k.value**p
        prof_p = profile(scheme, k, g, p)
        prof_pm1 = profile(scheme, k, g, p - 1)
        for n, xi, v in zip(g.indices, g.frequencies, prof_p.values):
            col1.rows.append((label, str(k), g.N, int(n), xi, scale * v))
        for n, xi, v in zip(g.indices, g.frequencies, prof_pm1.values):
            col2.rows.append((label, str(k), g.N, int(n), xi, scale * v))
        col3.rows.append(
            (label, str(k), g.N, k.value * g.h, scale * prof_p.max_value,
             scale * prof_pm1.max_value, prof_p.argmax_n, prof_pm1.argmax_n)
        )
    return [col1, col2, col3]


def figure1() -> list[Panel]:
    """Symbol-error profiles: cls h-refinement, cls ladder, df2/df4/df6 ladders."""
    panels = _profile_panels(
        "row1_cls_href", Scheme.CLS, [(LADDER_BASE, GridSpec(N)) for N in HREF_NS], "cls, fixed k"
    )
    panels += _profile_panels(
        "row2_cls_ladder", Scheme.CLS, ladder_points(LADDER_BASE, CLS_LADDER_N0, 4), "cls, k x2 / N x4"
    )
    for i, s in enumerate((Scheme.DF2, Scheme.DF4, Scheme.DF6), start=3):
        panels += _profile_panels(
            f"row{i}_{s}_ladder", s, ladder_points(LADDER_BASE, DF_LADDER_N0, 4), f"{s}, k x2 / N x4"
        )
    return panels


ERROR_COLUMNS = ("series", "k", "N", "kh", "error", "scaled", "bound")


def figure2() -> list[Panel]:
    """Measured errors vs kh for each k: 4 schemes x (mono L2, mono H1, mixed L2, mixed H1)."""
    panels = []
    ks = ladder_wavenumbers()
    for s in Scheme:
        law = scaling_exponents(s)
        for source_name in ("mono", "mixed"):
            for norm in ("l2", "h1"):
                ka, ha = law[norm]
                panels.append(
                    Panel(
                        f"{s}_{source_name}_{norm}",
                        ERROR_COLUMNS,
                        x="kh",
                        y="scaled",
                        xlabel="kh",
                        ylabel=f"error / (k^{ka} h^{ha})",
                        title=f"{s}, {source_name} source, {'L2' if norm == 'l2' else 'H1 semi'} error",
                    )
                )
        mono_l2, mono_h1, mixed_l2, mixed_h1 = panels[-4:]
        for k in ks:
            for kh in FIG2_KH:
                g = grid_for_kh(k, kh)
                label = f"k={k}"
                row = run_case(s, k, g, "mono")
                mono_l2.rows.append((label, str(k), g.N, row.kh, row.l2_error, row.l2_scaled, row.bound_l2))
                mono_h1.rows.append((label, str(k), g.N, row.kh, row.h1_semi_error, row.h1_scaled, row.bound_h1))
                if g.N <= mixed_source().max_mode:
                    continue
                row = run_case(s, k, g, "mixed")
                mixed_l2.rows.append((label, str(k), g.N, row.kh, row.l2_error, row.l2_scaled, row.bound_l2))
                mixed_h1.rows.append((label, str(k), g.N, row.kh, row.h1_semi_error, row.h1_scaled, row.bound_h1))
    return panels


def figure3() -> list[Panel]:
    """Fixed kh, increasing k: one profile per k for each dispersion-free scheme."""
    panels = []
    ks = ladder_wavenumbers()
    for s in (Scheme.DF2, Scheme.DF4, Scheme.DF6):
        p = default_p(s)
        prof_panel = Panel(
            f"{s}_kh_fixed",
            ("series", "k", "N", "n", "xi", "xi_over_k", "kp_psi_p", "kp_psi_pm1"),
            x="xi_over_k", y="kp_psi_pm1",
            xlabel="xi_n / k", ylabel=f"k^{p} psi_{p - 1}", title=f"{s}, kh={FIG3_KH}",
        )
        summary = Panel(
            f"{s}_kh_fixed_summary",
            ("series", "k", "N", "kh", "evanescent_max_psi_p", "evanescent_max_psi_pm1", "propagating_max_psi_pm1"),
            x="k", y="evanescent_max_psi_pm1", series=None,
            xlabel="k", ylabel="max over xi_n > k", title=f"{s}, kh={FIG3_KH}: evanescent maxima",
        )
        for r in sweep_kh_fixed(s, FIG3_KH, ks, p):
            label = f"k={r.k}"
            scale = r.k.value**p
            g = r.grid
            for n, xi, a, b in zip(g.indices, g.frequencies, r.profile_p.values, r.profile_pm1.values):
                prof_panel.rows.append((label, str(r.k), g.N, int(n), xi, xi / r.k.value, scale * a, scale * b))
            summary.rows.append(
                (label, str(r.k), g.N, r.kh, r.evanescent_max_p, r.evanescent_max_pm1, r.profile_pm1.propagating_max())
            )
        panels += [prof_panel, summary]
    return panels


FIGURES = {1: figure1, 2: figure2, 3: figure3}


def build_figure(figure: int) -> list[Panel]:
    try:
        return FIGURES[int(figure)]()
    except KeyError:
        raise ValueError(f"unknown figure {figure!r}; expected 1, 2 or 3") from None

