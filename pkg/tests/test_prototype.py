import math

import numpy as np
import pytest

from mwbpf.prototype import (
    ChebyshevPrototype,
    FilterSpec,
    UnsatisfiableSpec,
    attenuation_height,
    bandpass_to_lowpass,
    chebyshev_polynomial,
    g_values,
    normalized_stopband,
    prototype_attenuation_db,
    required_order,
    ripple_height,
)

# published 0.01 dB ripple, order 4 ladder values
G_VALUES_REF = (1.0, 0.7129, 1.2004, 1.3213, 0.6476, 1.1007)


class TestRippleHeight:
    def test_reference_ripple(self):
        assert ripple_height(0.01) == pytest.approx(2.30524e-3, rel=1e-4)

    def test_half_power_ripple(self):
        assert ripple_height(3.0103) == pytest.approx(1.0, abs=1e-4)

    def test_tenth_db(self):
        assert ripple_height(0.1) == pytest.approx(2.3293e-2, rel=1e-3)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ripple_height(0.0)
        with pytest.raises(ValueError):
            ripple_height(-0.5)


class TestAttenuationHeight:
    def test_25db(self):
        a = attenuation_height(25.0, ripple_height(0.01))
        assert a == pytest.approx(369.8, abs=0.5)

    def test_stopband_equals_ripple_level(self):
        for level in (0.5, 3.0, 20.0):
            assert attenuation_height(level, ripple_height(level)) == pytest.approx(1.0)

    def test_40db(self):
        a = attenuation_height(40.0, ripple_height(0.01))
        assert a == pytest.approx(2082.6, abs=1.0)

    def test_unsatisfiable(self):
        # stopband requirement below the ripple level
        with pytest.raises(UnsatisfiableSpec):
            attenuation_height(0.005, ripple_height(0.01))


class TestFrequencyMapping:
    def test_paper_stopband(self, paper_spec):
        assert normalized_stopband(paper_spec) == pytest.approx(2.823, abs=0.005)

    def test_band_center_maps_to_origin(self):
        assert bandpass_to_lowpass(2.58, 2.58, 0.0504) == 0.0

    def test_band_edge_maps_near_unity(self, paper_spec):
        om = bandpass_to_lowpass(paper_spec.f_upper, paper_spec.f0, paper_spec.fbw())
        assert om == pytest.approx(1.0, abs=paper_spec.fbw() ** 2 / 2 + 0.07)

    def test_stop_below_band_is_negative(self):
        spec = FilterSpec(
            f_lower=2.52, f_upper=2.65, f0=2.58, ripple_db=0.01,
            stop_freq=2.3, stop_atten_db=25.0,
        )
        assert normalized_stopband(spec) < -1.0

    def test_in_band_stop_rejected(self, paper_spec):
        with pytest.raises(ValueError):
            FilterSpec(
                f_lower=2.52, f_upper=2.65, ripple_db=0.01,
                stop_freq=2.6, stop_atten_db=25.0,
            )


class TestRequiredOrder:
    def test_paper_spec_gives_four_poles(self, paper_spec):
        assert required_order(paper_spec) == 4

    def test_40db_gives_five(self, paper_spec):
        spec = FilterSpec(
            f_lower=2.52, f_upper=2.65, f0=2.58, ripple_db=0.01,
            stop_freq=2.77, stop_atten_db=40.0,
        )
        assert required_order(spec) == 5

    def test_ceiling_behavior(self):
        # a chosen so acosh(a)/acosh(omega_s) lands just above 3
        omega_s = 2.0
        a = math.cosh(3.001 * math.acosh(omega_s))
        assert math.ceil(math.acosh(a) / math.acosh(omega_s)) == 4

    def test_monotone_in_attenuation(self, paper_spec):
        orders = [
            required_order(
                FilterSpec(
                    f_lower=2.52, f_upper=2.65, f0=2.58, ripple_db=0.01,
                    stop_freq=2.77, stop_atten_db=att,
                )
            )
            for att in (15.0, 25.0, 40.0, 60.0, 80.0)
        ]
        assert orders == sorted(orders)

    def test_monotone_in_stopband_distance(self):
        orders = [
            required_order(
                FilterSpec(
                    f_lower=2.52, f_upper=2.65, f0=2.58, ripple_db=0.01,
                    stop_freq=fx, stop_atten_db=25.0,
                )
            )
            for fx in (2.70, 2.77, 2.9, 3.2, 4.0)
        ]
        assert orders == sorted(orders, reverse=True)


class TestGValues:
    def test_reference_listing(self):
        proto = g_values(4, 0.01)
        for got, ref in zip(proto.g, G_VALUES_REF):
            assert got == pytest.approx(ref, abs=5e-4)

    def test_first_order_half_power(self):
        proto = g_values(1, 3.0103)
        beta = math.log(1.0 / math.tanh(3.0103 / 17.37))
        gamma = math.sinh(beta / 2.0)
        assert proto.g[1] == pytest.approx(2.0 * math.sin(math.pi / 2) / gamma)
        assert proto.g[2] == 1.0

    def test_against_published_3db_table(self):
        # Pozar-style 3.0 dB ripple table: n=1 gives g1 = 1.9953
        assert g_values(1, 3.0).g[1] == pytest.approx(1.9953, abs=1e-3)

    def test_against_published_half_db_table(self):
        # 0.5 dB ripple, n=3: 1.5963, 1.0967, 1.5963, 1.0000
        proto = g_values(3, 0.5)
        ref = (1.0, 1.5963, 1.0967, 1.5963, 1.0000)
        for got, want in zip(proto.g, ref):
            assert got == pytest.approx(want, abs=1e-3)

    def test_g0_is_one(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(1, 10))
            ripple = float(rng.uniform(0.01, 3.0))
            proto = g_values(n, ripple)
            assert proto.g[0] == 1.0
            assert len(proto.g) == n + 2
            assert all(g > 0 for g in proto.g)

    def test_termination_parity(self):
        for n in range(1, 9):
            proto = g_values(n, 0.2)
            beta = math.log(1.0 / math.tanh(0.2 / 17.37))
            if n % 2:
                assert proto.g[-1] == 1.0
            else:
                want = 1.0 / math.tanh(beta / 4.0) ** 2
                assert proto.g[-1] == pytest.approx(want, rel=1e-12)
                assert proto.g[-1] != 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            g_values(0, 0.1)
        with pytest.raises(ValueError):
            g_values(3, -1.0)
        with pytest.raises(ValueError):
            ChebyshevPrototype(n=2, ripple_db=0.1, g=(1.0, 0.5))


class TestTransferComposition:
    def test_attenuation_at_cutoff_equals_ripple(self):
        for n in (2, 4, 7):
            for ripple in (0.01, 0.1, 1.0):
                assert prototype_attenuation_db(n, ripple, 1.0) == pytest.approx(
                    ripple, rel=1e-9
                )

    def test_order_sufficiency(self, paper_spec):
        n = required_order(paper_spec)
        omega_s = abs(normalized_stopband(paper_spec))
        att = prototype_attenuation_db(n, paper_spec.ripple_db, omega_s)
        assert att >= paper_spec.stop_atten_db

    def test_chebyshev_polynomial_continuation(self):
        # cosh continuation agrees with the recurrence outside [-1, 1]
        for n in (3, 4, 6):
            for x in (1.5, 2.823, -1.7):
                t_prev, t = 1.0, x
                for _ in range(n - 1):
                    t_prev, t = t, 2 * x * t - t_prev
                assert chebyshev_polynomial(n, x) == pytest.approx(t, rel=1e-9)


class TestFilterSpec:
    def test_default_f0_is_geometric_mean(self):
        spec = FilterSpec(
            f_lower=2.52, f_upper=2.65, ripple_db=0.01,
            stop_freq=2.77, stop_atten_db=25.0,
        )
        assert spec.f0 == pytest.approx(math.sqrt(2.52 * 2.65), rel=1e-12)
        assert 0 < spec.fbw() < 1

    def test_rejects_bad_band(self):
        with pytest.raises(ValueError):
            FilterSpec(f_lower=2.65, f_upper=2.52, ripple_db=0.01,
                       stop_freq=2.77, stop_atten_db=25.0)

    def test_rejects_attenuation_below_ripple(self):
        with pytest.raises(UnsatisfiableSpec):
            FilterSpec(f_lower=2.52, f_upper=2.65, ripple_db=1.0,
                       stop_freq=2.77, stop_atten_db=0.5)

    def test_rejects_bad_z0(self):
        with pytest.raises(ValueError):
            FilterSpec(f_lower=2.52, f_upper=2.65, ripple_db=0.01,
                       stop_freq=2.77, stop_atten_db=25.0, z0=-50.0)
