import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dephasing_sdc.numerics import DomainError, ValidationError, binary_entropy, hermitian_eigenvalues
from dephasing_sdc.sdc import (
    BELL_VECTORS,
    PRESETS,
    EncodingOp,
    NoiseSchedule,
    bell_projectors,
    conditional_probabilities,
    dilation_oracle,
    effective_coherences,
    encoded_states,
    mutual_information,
    mutual_information_closed_form,
    schedule,
    simulate_configuration,
)
from dephasing_sdc.spectra import default_grid, magnitude

from conftest import SIGMA, spectrum

NM = spectrum(0.390)
MK = spectrum(0.004)
LATTICE = np.linspace(0.0, 1.0, 101)


def brute_force_probabilities(h, k):
    rho = encoded_states(h, k)
    proj = bell_projectors()
    return np.array([[np.trace(proj[y] @ rho[x]).real for y in range(4)] for x in range(4)])


def encode_phi_plus(k):
    """Alice's unitary on the first qubit of Phi+, no noise."""
    u = np.kron(EncodingOp(k).matrix, np.eye(2))
    psi = u @ BELL_VECTORS[0]
    return np.outer(psi, psi.conj())


class TestEncoding:
    @pytest.mark.parametrize("k, flips, sign", [(0, False, 1), (1, True, 1), (2, True, -1), (3, False, -1)])
    def test_flags(self, k, flips, sign):
        op = EncodingOp(k)
        assert op.flips_polarization is flips and op.coherence_sign == sign

    @pytest.mark.parametrize("k", range(4))
    def test_noiseless_encoding_hits_bell_state(self, k):
        np.testing.assert_allclose(encode_phi_plus(k), bell_projectors()[k], atol=1e-15)

    def test_invalid(self):
        with pytest.raises(ValueError):
            EncodingOp(4)

    @pytest.mark.parametrize("bad", [dict(f1=-0.1), dict(f3=float("inf")), dict(preset="e")])
    def test_schedule_validation(self, bad):
        with pytest.raises(ValueError):
            NoiseSchedule(**({"f1": 0, "f2": 0, "f3": 1, "f4": 0} | bad))

    def test_presets(self):
        assert [(s.f1, s.f2, s.f3, s.f4) for s in PRESETS.values()] == [
            (0, 0, 1, 0), (0.5, 0, 0.5, 0), (0.5, 0.5, 0.5, 0.5), (0.5, 0.5, 0.5, 0.5)]
        with pytest.raises(ValueError):
            schedule("x")


class TestEffectiveCoherences:
    @pytest.mark.parametrize("preset", "abcd")
    def test_origin(self, preset):
        assert effective_coherences(NM, MK, PRESETS[preset], 0.0) == (1.0, 1.0)

    def test_preset_b_echo(self):
        t = np.linspace(0, 6 / SIGMA, 50)
        h, k = effective_coherences(NM, MK, PRESETS["b"], t)
        assert np.all(h == 1.0)
        np.testing.assert_array_equal(k, magnitude(NM, t))

    def test_preset_a(self):
        t = np.linspace(0, 6 / SIGMA, 50)
        h, k = effective_coherences(NM, MK, PRESETS["a"], t)
        np.testing.assert_array_equal(h, magnitude(NM, t))
        np.testing.assert_array_equal(k, h)

    def test_preset_c_reduces(self):
        t = np.linspace(0, 6 / SIGMA, 50)
        h, k = effective_coherences(NM, MK, PRESETS["c"], t)
        np.testing.assert_array_equal(h, magnitude(MK, t))
        np.testing.assert_allclose(k, magnitude(NM, t) * magnitude(MK, t), rtol=1e-15)

    def test_negative_time(self):
        with pytest.raises(DomainError):
            effective_coherences(NM, MK, PRESETS["c"], -1.0)


class TestEncodedStates:
    def test_bell_limit(self):
        np.testing.assert_allclose(encoded_states(1, 1), bell_projectors(), atol=1e-15)

    def test_dephased_k(self):
        rho = encoded_states(0.3, 0.0)
        expected = np.diag([0.5, 0, 0, 0.5]).astype(complex)
        np.testing.assert_array_equal(rho[0], expected)
        np.testing.assert_array_equal(rho[3], expected)

    @pytest.mark.parametrize("h", [0.0, 0.2, 0.77, 1.0])
    def test_flip_state_spectrum(self, h):
        np.testing.assert_allclose(hermitian_eigenvalues(encoded_states(h, 0.5)[1]),
                                   [(1 + h) / 2, (1 - h) / 2, 0, 0], atol=1e-14)

    @given(st.floats(0, 1), st.floats(0, 1))
    def test_valid_and_pairwise_cancel(self, h, k):
        rho = encoded_states(h, k)
        for r in rho:
            assert abs(np.trace(r) - 1) <= 1e-15
            assert np.min(np.linalg.eigvalsh(r)) >= -1e-12
        base = encoded_states(0, 0)
        np.testing.assert_allclose(rho[0] + rho[3], base[0] + base[3], atol=1e-15)
        np.testing.assert_allclose(rho[1] + rho[2], base[1] + base[2], atol=1e-15)

    @pytest.mark.parametrize("h, k", [(-0.1, 0.5), (0.5, 1.1)])
    def test_domain(self, h, k):
        with pytest.raises(DomainError):
            encoded_states(h, k)
        with pytest.raises(DomainError):
            conditional_probabilities(h, k)


class TestProbabilities:
    def test_identity_limit(self):
        np.testing.assert_array_equal(conditional_probabilities(1, 1), np.eye(4))

    def test_worked_entry(self):
        for h in LATTICE:
            assert conditional_probabilities(h, 0.4)[1, 2] == (1 - h) / 2

    def test_trace_oracle(self):
        for h in LATTICE[::10]:
            for k in LATTICE[::10]:
                P = conditional_probabilities(h, k)
                np.testing.assert_allclose(P, brute_force_probabilities(h, k), atol=1e-12)
                np.testing.assert_allclose(P.sum(axis=1), 1.0, atol=1e-12)


class TestMutualInformation:
    @pytest.mark.parametrize("h, k, bits", [(1, 1, 2.0), (1, 0, 1.5), (0, 0, 1.0)])
    def test_quoted_values(self, h, k, bits):
        assert mutual_information(conditional_probabilities(h, k)) == pytest.approx(bits, abs=1e-15)
        assert mutual_information_closed_form(h, k) == pytest.approx(bits, abs=1e-15)

    def test_rejects_non_stochastic(self):
        with pytest.raises(ValidationError):
            mutual_information(np.full((4, 4), 0.3))
        with pytest.raises(ValidationError):
            mutual_information(np.eye(3))

    def test_uniform_channel(self):
        assert mutual_information(np.full((4, 4), 0.25)) == 0.0

    def test_monotone_on_lattice(self):
        i = mutual_information_closed_form(LATTICE[:, None], LATTICE[None, :])
        assert np.all(np.diff(i, axis=0) >= 0) and np.all(np.diff(i, axis=1) >= 0)

    def test_closed_form_matches_natural_log(self):
        h, k = 0.3, 0.8
        def h2(p):
            return -(p * math.log(p) + (1 - p) * math.log(1 - p)) / math.log(2)
        assert mutual_information_closed_form(h, k) == pytest.approx(2 - 0.5 * (h2(0.9) + h2(0.65)), abs=1e-14)
        assert binary_entropy(0.9) == pytest.approx(h2(0.9), abs=1e-15)


@pytest.fixture(scope="module")
def grid():
    return default_grid(NM, n_points=4097)


class TestSimulateConfiguration:
    @pytest.mark.parametrize("preset", "abc")
    def test_starts_at_two(self, grid, preset):
        curve = simulate_configuration(preset, NM, NM, grid)
        assert curve.mutual_info[0] == 2.0

    def test_preset_a_markovian_decays_to_one(self, grid):
        curve = simulate_configuration("a", MK, MK, grid)
        assert np.all(np.diff(curve.mutual_info) <= 1e-12)
        assert curve.tail_mean() == pytest.approx(1.0, abs=1e-3)

    def test_preset_b_revives_to_three_halves(self, grid):
        curve = simulate_configuration("b", NM, NM, grid)
        assert np.max(np.diff(curve.mutual_info)) > 1e-4
        assert curve.tail_mean() == pytest.approx(1.5, abs=1e-3)

    def test_preset_d_ordering(self, grid):
        alice = simulate_configuration("d", NM, MK, grid).mutual_info
        bob = simulate_configuration("d", MK, NM, grid).mutual_info
        assert np.all(alice >= bob - 1e-12)

    def test_preset_d_requires_distinct(self, grid):
        with pytest.raises(ValueError):
            simulate_configuration("d", NM, NM, grid)

    def test_serialization(self):
        grid = default_grid(NM, n_points=5)
        curve = simulate_configuration("c", NM, MK, grid)
        lines = curve.to_csv().splitlines()
        assert lines[0] == "t,h_mag,k_mag,mutual_info"
        assert lines[1] == "0,1,1,2"
        assert float(lines[3].split(",")[3]) == curve.mutual_info[2]
        doc = json.loads(curve.to_json())
        assert doc["mutual_info"] == curve.mutual_info.tolist()


class TestDilationOracle:
    def test_origin_is_exact_bell_state(self):
        for sched in PRESETS.values():
            rho = dilation_oracle(NM, MK, sched, 0, 0.0, 1000, 0)
            np.testing.assert_array_equal(rho, bell_projectors()[0])

    def test_preset_c_flip(self):
        n = 10**6
        t = 1.0 / SIGMA
        h, _ = effective_coherences(NM, MK, PRESETS["c"], t)
        rho = dilation_oracle(NM, MK, PRESETS["c"], 1, t, n, 0)
        assert abs(abs(rho[1, 2]) - 0.5 * h) <= 5 / math.sqrt(n)

    @pytest.mark.parametrize("t", [0.5 / SIGMA, 2.0 / SIGMA, 5.0 / SIGMA])
    def test_preset_b_echo(self, t):
        n = 20_000
        rho = dilation_oracle(NM, NM, PRESETS["b"], 1, t, n, 3)
        assert abs(rho[1, 2]) == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("preset", "abcd")
    def test_all_entries_within_five_errors(self, preset):
        n = 100_000
        se = 0.5 / math.sqrt(n)
        sched = PRESETS[preset]
        for t in np.linspace(0.0, 4.0 / SIGMA, 10):
            h, k = effective_coherences(NM, MK, sched, t)
            expected = encoded_states(h, k)
            for msg in range(4):
                rho = dilation_oracle(NM, MK, sched, msg, t, n, 17)
                assert np.max(np.abs(rho - expected[msg])) <= 5 * se

    def test_partitions_deterministic(self):
        args = (NM, MK, PRESETS["c"], 2, 1.0 / SIGMA, 5000, 9)
        a = dilation_oracle(*args, n_partitions=3)
        np.testing.assert_array_equal(a, dilation_oracle(*args, n_partitions=3))
        assert a[1, 2].real <= 0

    def test_invalid_samples(self):
        with pytest.raises(ValueError):
            dilation_oracle(NM, MK, PRESETS["c"], 0, 0.0, 0, 0)
