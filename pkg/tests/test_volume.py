import json

import mpmath as mp
import pytest

from logjones import loginv, volume
from logjones.qcalc import RootContext
from logjones.volume import (
    asymptotic_scan,
    cone_params,
    cone_volume,
    cone_volume_derivative_reference,
    convergence_gaps,
    gamma_fig8_fast,
    lobachevsky,
    lobachevsky_quadrature,
    s_N_alpha,
    scan_precision,
    vol_reference,
)
from conftest import assert_close

VOL_4_1 = mp.mpf("2.029883212819307250042405108549")


class TestLobachevsky:
    def test_zeros(self):
        assert abs(lobachevsky(0)) < 1e-25
        assert abs(lobachevsky(mp.pi / 2)) < 1e-25

    def test_known_volume_value(self):
        # 6 L(pi/3) is the figure-eight complement volume; the quadrature
        # of the defining integral is the independent oracle
        series = 6 * lobachevsky(mp.pi / 3)
        quad = 6 * lobachevsky_quadrature(mp.pi / 3)
        assert_close(series, quad, mp.mpf(10) ** -22)
        assert_close(series, VOL_4_1, mp.mpf(10) ** -25)

    def test_quadrature_agreement_generic_points(self):
        for x in (0.2, 0.7, 1.1, 2.9):
            assert_close(lobachevsky(x), lobachevsky_quadrature(x), mp.mpf(10) ** -20)

    def test_odd_and_periodic(self):
        for k in range(1, 24):
            x = mp.mpf(k) / 7
            assert abs(lobachevsky(-x) + lobachevsky(x)) < 1e-12
            assert abs(lobachevsky(x + mp.pi) - lobachevsky(x)) < 1e-12

    def test_maximum_at_pi_over_6(self):
        xs = [mp.pi * k / 600 for k in range(601)]
        vals = [lobachevsky(x) for x in xs]
        best = max(range(len(xs)), key=lambda i: vals[i])
        assert abs(xs[best] - mp.pi / 6) < mp.pi / 100

    def test_duplication_identity(self):
        # L(pi/6) = (3/2) L(pi/3)
        assert_close(lobachevsky(mp.pi / 6), mp.mpf(3) / 2 * lobachevsky(mp.pi / 3),
                     mp.mpf(10) ** -22)


class TestConeVolume:
    def test_params_branch(self):
        p = cone_params(0)
        assert abs(p.theta - 5 * mp.pi / 3) < 1e-20  # 2 pi - pi/3
        assert mp.pi < p.theta < 2 * mp.pi
        assert abs(p.t - 1) < 1e-20
        p2 = cone_params(mp.mpf("0.8"))
        assert abs(mp.cos(p2.theta) - (mp.cos(mp.mpf("0.8")) - mp.mpf(1) / 2)) < 1e-20

    def test_volume_at_zero(self):
        v = cone_volume(0)
        assert_close(v, VOL_4_1, mp.mpf(10) ** -5)
        assert_close(v, 4 * lobachevsky(mp.pi / 6), mp.mpf(10) ** -22)
        assert_close(v, 6 * lobachevsky(mp.pi / 3), mp.mpf(10) ** -22)

    def test_positive_and_decreasing(self):
        vals = [cone_volume(2 * mp.pi / 3 * k / 12) for k in range(12)]
        assert all(v > 0 for v in vals)
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_derivative_matches_arccosh(self):
        # Richardson-extrapolated central differences at 20 interior points
        for k in range(1, 21):
            a = 2 * mp.pi / 3 * k / 21
            h = mp.mpf(1) / 10 ** 6
            d1 = (cone_volume(a + h, 40) - cone_volume(a - h, 40)) / (2 * h)
            d2 = (cone_volume(a + h / 2, 40) - cone_volume(a - h / 2, 40)) / h
            fd = (4 * d2 - d1) / 3
            assert_close(fd, cone_volume_derivative_reference(a, 40), mp.mpf(10) ** -6)

    def test_flat_derivative_at_boundary(self):
        # t -> 1 as alpha -> 2pi/3, so the derivative flattens
        p = cone_params(2 * mp.pi / 3 - mp.mpf(10) ** -8)
        assert abs(p.t - 1) < 1e-7
        assert abs(cone_volume_derivative_reference(2 * mp.pi / 3 - mp.mpf(10) ** -8)) < 1e-3

    def test_domain_error(self):
        with pytest.raises(ValueError):
            cone_volume(2 * mp.pi / 3)
        with pytest.raises(ValueError):
            cone_volume(-0.1)


class TestFastKernel:
    def test_matches_habiro_route_small_N(self):
        for N in range(2, 7):
            ctx = RootContext(N)
            for s in range(1, N):
                gf = gamma_fig8_fast(N, s, ctx)
                gh = loginv.gamma_s("4_1", s, N, loginv.Route.HABIRO, ctx)
                assert_close(gf, gh, mp.mpf(10) ** -30)

    @pytest.mark.parametrize("N", [20, 50])
    def test_matches_generic_machinery_numeric(self, N):
        # the generic tilde/cotangent evaluation is the slow oracle
        ctx = RootContext(N, precision_digits=60)
        h = loginv.habiro.catalog_coeffs("4_1")
        for s in (1, N // 3, N // 2, N - 1):
            if not 1 <= s <= N - 1:
                continue
            gf = gamma_fig8_fast(N, s, ctx)
            gh = loginv.gamma_s(h, s, N, loginv.Route.HABIRO, ctx)
            assert_close(gf, gh, mp.mpf(10) ** -20)

    def test_even_N_midpoint_vanishes(self):
        # cotangent windows centered at N/2 cancel pairwise and the tilde
        # range is empty, so gamma_{N/2} = 0 for even N
        for N in (4, 6, 10):
            ctx = RootContext(N)
            assert abs(gamma_fig8_fast(N, N // 2, ctx)) < ctx.tol

    def test_real_valued(self):
        ctx = RootContext(7)
        for s in range(1, 7):
            g = gamma_fig8_fast(7, s, ctx)
            assert abs(g.imag) < ctx.tol


class TestScan:
    def test_s_N_alpha(self):
        assert s_N_alpha(200, 0) == 0
        assert s_N_alpha(200, mp.pi / 3) == 33
        assert s_N_alpha(10, 2 * mp.pi) == 10  # clamped
        vals = [s_N_alpha(200, 2 * mp.pi * k / 40) for k in range(41)]
        assert vals == sorted(vals)

    def test_rows_and_regions(self):
        res = asymptotic_scan(30)
        N = 30
        assert [r.s for r in res.rows] == list(range(1, N))
        for r in res.rows:
            # regions follow the exact rational rule on s/N
            if 3 * r.s < N:
                assert r.region == "volume"
                ref = cone_volume(2 * mp.pi * r.s / N)
            elif 3 * r.s <= 2 * N:
                assert r.region == "conjectural-flat"
                ref = mp.mpf(0)
            else:
                assert r.region == "volume-mirror"
                ref = cone_volume(2 * mp.pi * (N - r.s) / N)
            assert abs(r.vol_reference - float(ref)) < 1e-12
        labels = {r.region for r in res.rows}
        assert labels == {"volume", "conjectural-flat", "volume-mirror"}

    def test_vol_reference_helper(self):
        v, lab = vol_reference(mp.mpf("0.5"))
        assert lab == "volume" and abs(v - cone_volume(mp.mpf("0.5"))) < 1e-20
        v, lab = vol_reference(mp.pi)
        assert lab == "conjectural-flat" and v == 0
        v, lab = vol_reference(2 * mp.pi - mp.mpf("0.5"))
        assert lab == "volume-mirror" and abs(v - cone_volume(mp.mpf("0.5"))) < 1e-20

    def test_zero_rows_flagged(self):
        res = asymptotic_scan(4)
        mid = res.rows[1]  # s = 2 = N/2
        assert mid.zero_flag and mid.log_gamma_scaled == float("-inf")

    def test_csv_and_json(self):
        res = asymptotic_scan(12)
        csv = res.to_csv()
        lines = csv.strip().split("\n")
        assert lines[0] == "N,s,alpha,log_gamma_scaled,vol_reference,region_label"
        assert len(lines) == 12
        data = json.loads(res.to_json())
        assert data["N"] == 12 and len(data["rows"]) == 11

    def test_deterministic(self):
        a = asymptotic_scan(15).to_csv()
        b = asymptotic_scan(15).to_csv()
        assert a == b

    def test_scan_precision_scales(self):
        assert scan_precision(10) == 36 or scan_precision(10) == 33 + 3  # small N floor
        assert scan_precision(400) >= 90

    def test_convergence_direction_small(self):
        gaps = convergence_gaps(mp.pi / 5, Ns=(50, 100, 200))
        assert gaps[0] > gaps[1] > gaps[2]

    def test_plateau_shape_moderate_N(self):
        res = asymptotic_scan(120)
        for r in res.rows:
            if r.zero_flag:
                continue
            if r.region == "conjectural-flat":
                assert abs(r.log_gamma_scaled) < 0.5
            else:
                assert abs(r.log_gamma_scaled - r.vol_reference) < 0.5
