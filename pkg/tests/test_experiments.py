import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helmfd.errors import BandLimitError
from helmfd.experiments import (
    CLS_LADDER_N0,
    DF_LADDER_N0,
    HREF_NS,
    LADDER_BASE,
    error_report,
    even_grid,
    flag_floor,
    grid_for_kh,
    h_slope,
    is_ladder,
    ladder_fits,
    ladder_points,
    ladder_wavenumbers,
    preasymptotic_psi0,
    resolve_source,
    run_case,
    scaling_exponents,
    sweep_h_refinement,
    sweep_kh_fixed,
    sweep_ladder,
)
from helmfd.schemes import Scheme, WaveNumber
from helmfd.sources import SourceSpec, mixed_source
from helmfd.spectral import GridSpec, SineSpectrum, weighted_norm
from helmfd.symbol_analysis import profile

K5 = WaveNumber(5, 1.0)
K10 = WaveNumber(10, 1.0)


class TestGrids:
    @pytest.mark.parametrize("N, expected", [(3, 4), (17, 18), (18, 18), (83, 84)])
    def test_even_rounding(self, N, expected):
        assert even_grid(N).N == expected

    def test_grid_for_kh(self):
        g = grid_for_kh(K5, 0.2)
        assert g.N == CLS_LADDER_N0
        assert K5.value * g.h <= 0.2
        assert K5.value / (g.N - 2) > 0.2

    def test_df_start(self):
        assert grid_for_kh(K5, 1.0).N == DF_LADDER_N0

    def test_ladder_points(self):
        pts = ladder_points(K5, 17, 2)
        assert [(str(k), g.N) for k, g in pts] == [("5pi+1", 18), ("10pi+1", 72), ("20pi+1", 288)]

    def test_ladder_wavenumbers(self):
        assert [k.pi_multiple for k in ladder_wavenumbers()] == [5, 10, 20, 40, 80]


class TestSources:
    def test_mixed_minimum_grid(self):
        assert mixed_source().min_grid() == 162
        with pytest.raises(BandLimitError):
            run_case(Scheme.DF2, K10, 160, "mixed")

    def test_mixed_l2_norm(self):
        g = GridSpec(162)
        assert weighted_norm(mixed_source().spectrum(g), 0) ** 2 == pytest.approx(3.0, rel=1e-15)

    def test_resolve(self):
        assert resolve_source("mono", K10) == SourceSpec(((10, 1.0),))
        assert resolve_source(None, K5) == SourceSpec(((5, 1.0),))
        assert resolve_source(lambda k: SourceSpec(((2, 3.0),)), K5).modes == ((2, 3.0),)
        with pytest.raises(ValueError):
            resolve_source("chirp", K5)


class TestErrorReport:
    def test_per_mode(self):
        g = GridSpec(8)
        a = SineSpectrum.unit(g, 2, 1.0)
        b = SineSpectrum.unit(g, 2, 0.75)
        rep = error_report(a, b)
        assert rep.l2_error == pytest.approx(0.25 / math.sqrt(2))
        assert rep.h1_semi_error == pytest.approx(0.25 * 2 * math.pi / math.sqrt(2))
        assert rep.per_mode[1].tolist() == [2, 0.25]

    def test_grid_mismatch(self):
        with pytest.raises(ValueError):
            error_report(SineSpectrum.zeros(GridSpec(8)), SineSpectrum.zeros(GridSpec(10)))


class TestRunCase:
    def test_df2_mixed_against_oracle(self):
        row = run_case(Scheme.DF2, K10, 256, "mixed")
        assert row.l2_error == pytest.approx(1.4091486603407421e-5, rel=1e-8)
        assert row.h1_semi_error == pytest.approx(0.00076247393250979494, rel=1e-8)

    def test_zero_source(self):
        row = run_case(Scheme.DF4, K5, 32, SourceSpec(()))
        assert row.l2_error == 0.0 and row.h1_semi_error == 0.0
        assert row.bound_l2 == 0.0 and row.bound_h1 == 0.0

    def test_scaled_columns(self):
        row = run_case(Scheme.CLS, K5, 64, "mono")
        kv, h = K5.value, 1 / 64
        assert row.kh == pytest.approx(kv * h)
        assert row.l2_scaled == pytest.approx(row.l2_error / (kv**2 * h**2))
        assert row.h1_scaled == pytest.approx(row.h1_semi_error / (kv**3 * h**2))

    def test_odd_grid_rejected(self):
        with pytest.raises(ValueError):
            run_case(Scheme.CLS, K5, 17)

    @pytest.mark.parametrize("scheme", list(Scheme))
    @pytest.mark.parametrize("source", ["mono", "mixed"])
    @pytest.mark.parametrize("N", [162, 256, 1024])
    def test_bound_holds(self, scheme, source, N):
        row = run_case(scheme, K10, N, source)
        assert row.l2_error <= row.bound_l2 * (1 + 1e-10)
        assert row.h1_semi_error <= row.bound_h1 * (1 + 1e-10)

    def test_bound_attained_for_single_mode_at_argmax(self):
        g = GridSpec(128)
        prof = profile(Scheme.DF4, K10, g, 2)
        row = run_case(Scheme.DF4, K10, g, SourceSpec(((prof.argmax_n, 1.0),)))
        assert row.l2_error == pytest.approx(row.bound_l2, rel=1e-12)


def test_scaling_exponents():
    assert scaling_exponents("cls") == {"l2": (2, 2), "h1": (3, 2)}
    assert scaling_exponents(Scheme.DF6) == {"l2": (5, 6), "h1": (6, 6)}


class TestHRefinement:
    def test_cls_slope(self):
        assert h_slope(sweep_h_refinement(Scheme.CLS, K5, HREF_NS)) == pytest.approx(-2.0, abs=0.1)

    def test_df4_slope(self):
        rows = sweep_h_refinement(Scheme.DF4, K5, [32, 64, 128, 256])
        assert h_slope(rows) == pytest.approx(-4.0, abs=0.2)

    def test_odd_rounded(self):
        assert [r.N for r in sweep_h_refinement(Scheme.CLS, K5, [33, 64])] == [34, 64]

    def test_empty(self):
        with pytest.raises(ValueError):
            sweep_h_refinement(Scheme.CLS, K5, [])

    def test_slope_needs_two_rows(self):
        with pytest.raises(ValueError):
            h_slope(sweep_h_refinement(Scheme.CLS, K5, [64]))


class TestFloor:
    def test_flags_stall_and_everything_after(self):
        base = run_case(Scheme.DF4, K5, 32)
        errs = [1e-3, 1e-4, 9e-5, 1e-8]
        rows = [replace(base, l2_error=e, N=32 * 2**i) for i, e in enumerate(errs)]
        assert [r.floor for r in flag_floor(rows)] == [False, False, True, True]

    def test_df6_deep_refinement_reaches_floor(self):
        rows = sweep_h_refinement(Scheme.DF6, K5, [32, 128, 512, 2048, 8192])
        assert rows[-1].floor
        assert not rows[0].floor


class TestLadder:
    def test_cls_alpha(self):
        rows = sweep_ladder(Scheme.CLS, LADDER_BASE, CLS_LADDER_N0)
        assert is_ladder(rows)
        fits = ladder_fits(rows)
        assert fits["l2"].alpha == pytest.approx(2.0, abs=0.2)
        assert fits["h1"].alpha == pytest.approx(3.0, abs=0.2)

    @pytest.mark.parametrize("scheme, alpha", [(Scheme.DF2, 1.0), (Scheme.DF4, 3.0), (Scheme.DF6, 5.0)])
    def test_df_alpha(self, scheme, alpha):
        fits = ladder_fits(sweep_ladder(scheme, LADDER_BASE, DF_LADDER_N0))
        assert fits["l2"].alpha == pytest.approx(alpha, abs=0.3)

    def test_kh_halves(self):
        rows = sweep_ladder(Scheme.DF2, K5, 18, 3)
        kh = [r.kh for r in rows]
        for a, b in zip(kh, kh[1:]):
            assert b / a == pytest.approx(0.5, rel=0.05)

    def test_needs_a_step(self):
        with pytest.raises(ValueError):
            sweep_ladder(Scheme.CLS, K5, 84, 0)

    def test_href_is_not_ladder(self):
        assert not is_ladder(sweep_h_refinement(Scheme.CLS, K5, [84, 168, 336]))


class TestKhFixed:
    def test_matches_profile(self):
        res = sweep_kh_fixed(Scheme.DF4, 0.5, [K5, K10])
        for r in res:
            assert r.kh <= 0.5
            direct = profile(Scheme.DF4, r.k, r.grid, 2)
            np.testing.assert_array_equal(r.profile_p.values, direct.values)
            assert r.evanescent_max_p == direct.evanescent_max()
            assert r.profile_pm1.p == 1

    def test_evanescent_decay(self):
        res = sweep_kh_fixed(Scheme.DF6, 0.5, ladder_wavenumbers())
        vals = [r.evanescent_max_pm1 for r in res]
        assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize(
    "nk, expected",
    [(5, 0.0106384), (10, 0.00832166), (20, 0.00558938), (40, 0.00329617), (80, 0.00180466)],
)
def test_preasymptotic_table(nk, expected):
    assert preasymptotic_psi0(WaveNumber(nk, 1.0)) == pytest.approx(expected, rel=1e-3)


def test_preasymptotic_offset():
    with pytest.raises(ValueError):
        preasymptotic_psi0(WaveNumber(5, 0.5))


@settings(max_examples=25, deadline=None)
@given(
    scheme=st.sampled_from(list(Scheme)),
    nk=st.integers(1, 30),
    offset=st.floats(0.05, 0.95),
    N=st.sampled_from([64, 96, 128, 200]),
    amps=st.lists(st.floats(-2, 2, allow_nan=False), min_size=1, max_size=5),
)
def test_bound_property(scheme, nk, offset, N, amps):
    k = WaveNumber(nk, offset)
    if k.value / N > 1.0:
        return
    src = SourceSpec(tuple((3 * i + 1, a) for i, a in enumerate(amps)))
    row = run_case(scheme, k, N, src)
    assert row.l2_error <= row.bound_l2 * (1 + 1e-9) + 1e-300
    assert row.h1_semi_error <= row.bound_h1 * (1 + 1e-9) + 1e-300
