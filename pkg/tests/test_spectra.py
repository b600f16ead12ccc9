import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dephasing_sdc.numerics import DomainError
from dephasing_sdc.spectra import (
    DoublePeakSpectrum,
    TimeGrid,
    characteristic_fn,
    default_grid,
    magnitude,
    monte_carlo_characteristic,
)

from conftest import SEPARATION, SIGMA, spectrum


def closed_form_magnitude(spec, tau):
    """Magnitude from the cosine form, written out independently."""
    x = spec.sigma * spec.delta_n * spec.time_scale * tau
    a = spec.amp_ratio
    c = math.cos(spec.delta_n * (spec.omega2 - spec.omega1) * spec.time_scale * tau)
    return math.exp(-0.5 * x * x) * math.sqrt(max(1 + a * a + 2 * a * c, 0.0)) / (1 + a)


# phases stay within a few hundred radians, as on the physical grids
specs = st.builds(
    DoublePeakSpectrum,
    omega1=st.floats(-10, 10),
    omega2=st.floats(-10, 10),
    sigma=st.floats(0, 10),
    amp_ratio=st.one_of(st.just(0.0), st.floats(1e-6, 5)),
    delta_n=st.floats(0.1, 3),
    time_scale=st.floats(0.1, 3),
)


class TestDoublePeakSpectrum:
    @pytest.mark.parametrize("kwargs", [
        dict(sigma=-1.0),
        dict(amp_ratio=-0.1),
        dict(delta_n=0.0),
        dict(time_scale=0.0),
        dict(omega2=float("nan")),
    ])
    def test_invalid(self, kwargs):
        base = dict(omega1=0.0, omega2=1.0, sigma=0.1, amp_ratio=0.5)
        with pytest.raises(ValueError):
            DoublePeakSpectrum(**(base | kwargs))

    def test_swap_normalization(self):
        s = DoublePeakSpectrum(5.0, 1.0, 0.2, 0.25)
        assert (s.omega1, s.omega2, s.amp_ratio) == (1.0, 5.0, 4.0)

    def test_swap_with_zero_amplitude_keeps_occupied_peak(self):
        s = DoublePeakSpectrum(5.0, 1.0, 0.2, 0.0)
        assert s.omega1 == 5.0 and s.amp_ratio == 0.0

    def test_weights(self):
        assert spectrum(0.25).weights == pytest.approx((0.8, 0.2))

    def test_round_trip_dict(self):
        s = spectrum(0.39, 0.5)
        assert DoublePeakSpectrum(**s.to_dict()) == s


class TestTimeGrid:
    def test_samples(self):
        g = TimeGrid(2.0, 5)
        np.testing.assert_array_equal(g.samples, [0, 0.5, 1, 1.5, 2])
        assert g.step == 0.5
        with pytest.raises(ValueError):
            g.samples[0] = 1.0

    @pytest.mark.parametrize("t_max, n", [(0.0, 10), (1.0, 1), (-1.0, 10)])
    def test_invalid(self, t_max, n):
        with pytest.raises(ValueError):
            TimeGrid(t_max, n)

    def test_refined_contains_original(self):
        g = TimeGrid(1.0, 9)
        np.testing.assert_allclose(g.refined(4).samples[::4], g.samples, rtol=0, atol=1e-15)

    def test_default_grid(self):
        g = default_grid(spectrum(0.1), spectrum(0.1, time_scale=0.5))
        assert g.n_points == 2**17
        assert g.t_max == pytest.approx(6 / SIGMA)
        period = 2 * math.pi / SEPARATION
        assert period / g.step >= 8


class TestCharacteristicFunction:
    @pytest.mark.parametrize("amp", [0.0, 0.004, 0.39, 1.0, 3.0])
    def test_origin(self, amp):
        assert characteristic_fn(spectrum(amp), 0.0) == 1 + 0j
        assert magnitude(spectrum(amp), 0.0) == 1.0

    def test_single_peak_is_envelope(self):
        s = spectrum(0.0)
        tau = np.linspace(0, 5 / SIGMA, 50)
        np.testing.assert_allclose(np.abs(characteristic_fn(s, tau)),
                                   np.exp(-0.5 * (SIGMA * tau) ** 2), atol=1e-14)

    @pytest.mark.parametrize("amp", [0.1, 0.39, 1.0])
    def test_half_period_minimum(self, amp):
        s = DoublePeakSpectrum(0.0, 3.0, 0.4, amp, delta_n=1.5, time_scale=0.5)
        tau = math.pi / (1.5 * 3.0 * 0.5)
        expected = math.exp(-0.5 * (0.4 * 1.5 * 0.5 * tau) ** 2) * (1 - amp) / (1 + amp)
        assert magnitude(s, tau) == pytest.approx(expected, abs=1e-14)
        assert abs(characteristic_fn(s, tau)) == pytest.approx(expected, abs=1e-14)

    def test_complete_interference(self):
        s = DoublePeakSpectrum(0.0, 2.0, 0.0, 1.0)
        assert magnitude(s, math.pi / 2) == pytest.approx(0.0, abs=1e-15)

    def test_negative_time(self):
        with pytest.raises(DomainError):
            characteristic_fn(spectrum(0.1), -1e-15)
        with pytest.raises(DomainError):
            magnitude(spectrum(0.1), [0.0, -1.0])

    def test_markovian_spec_is_monotone(self, small_grid):
        m = magnitude(spectrum(0.004), small_grid.samples)
        assert np.all(np.diff(m) <= 1e-9)

    def test_non_markovian_spec_revives(self, small_grid):
        m = magnitude(spectrum(0.390), small_grid.samples)
        assert np.max(np.diff(m)) > 1e-3

    @settings(max_examples=200)
    @given(specs, st.floats(0, 5))
    def test_bounded_and_consistent(self, spec, tau):
        m = magnitude(spec, tau)
        assert m <= 1 + 1e-12
        assert abs(m - abs(characteristic_fn(spec, tau))) <= 1e-12
        assert abs(m - closed_form_magnitude(spec, tau)) <= 1e-12

    @settings(max_examples=100)
    @given(specs, st.floats(0, 5))
    def test_peak_swap_invariance(self, spec, tau):
        if spec.amp_ratio == 0:
            return
        swapped = DoublePeakSpectrum(spec.omega2, spec.omega1, spec.sigma, 1 / spec.amp_ratio,
                                     spec.delta_n, spec.time_scale)
        assert abs(magnitude(spec, tau) - magnitude(swapped, tau)) <= 1e-12

    @settings(max_examples=100)
    @given(specs, st.floats(0, 5), st.floats(-10, 10))
    def test_depends_on_separation_only(self, spec, tau, shift):
        moved = DoublePeakSpectrum(spec.omega1 + shift, spec.omega2 + shift, spec.sigma,
                                   spec.amp_ratio, spec.delta_n, spec.time_scale)
        assert abs(magnitude(spec, tau) - magnitude(moved, tau)) <= 1e-9

    def test_time_scale_halves_argument(self, small_grid):
        t = small_grid.samples
        a = magnitude(spectrum(0.091, time_scale=0.5), t)
        b = magnitude(spectrum(0.091), t / 2)
        np.testing.assert_array_equal(a, b)


class TestMonteCarlo:
    def test_origin_exact(self):
        for seed in range(3):
            assert monte_carlo_characteristic(spectrum(0.39), 0.0, 1000, seed) == 1 + 0j

    def test_deterministic(self):
        tau = np.linspace(0, 2 / SIGMA, 5)
        a = monte_carlo_characteristic(spectrum(0.39), tau, 5000, 3, n_partitions=4)
        b = monte_carlo_characteristic(spectrum(0.39), tau, 5000, 3, n_partitions=4)
        np.testing.assert_array_equal(a, b)
        c = monte_carlo_characteristic(spectrum(0.39), tau, 5000, 4, n_partitions=4)
        assert not np.array_equal(a, c)

    def test_invalid_samples(self):
        with pytest.raises(ValueError):
            monte_carlo_characteristic(spectrum(0.39), 0.0, 0, 0)

    @pytest.mark.parametrize("amp, partitions", [(0.0, 1), (0.39, 1), (0.39, 3), (2.0, 2)])
    def test_statistical_agreement(self, amp, partitions):
        n = 200_000
        spec = spectrum(amp)
        tau = np.linspace(0, 3 / SIGMA, 20)
        est = monte_carlo_characteristic(spec, tau, n, 11, n_partitions=partitions)
        dev = np.abs(est - characteristic_fn(spec, tau))
        assert np.sum(dev <= 5 / math.sqrt(n)) >= 19
