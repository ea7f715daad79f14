"""Expectation values, Mandel Q, sampling, thermal moments."""

import math

import numpy as np
import pytest

from hypercat import (
    ConvergenceError,
    DegenerateStateError,
    ParamSet,
    Parity,
    StateSpec,
    ThermalSpec,
    ValidationError,
    expect_N,
    expect_N2,
    expect_adagS_aR,
    factorial_moment,
    mandel_Q,
    photon_count_summary,
    photon_distribution,
    sample_photon_counts,
    thermal_factorial_moment_direct,
    thermal_normal_moment,
    thermal_partition,
)
from hypercat.statistics import _truncated_pmf


def distribution_moment(state: StateSpec, power: int, n_levels: int = 400) -> float:
    """Brute-force sum of n^power over the photon distribution."""
    return sum((n**power) * photon_distribution(state, n) for n in range(n_levels))


def distribution_falling_moment(state: StateSpec, r: int, n_levels: int = 400) -> float:
    total = 0.0
    for n in range(r, n_levels):
        w = 1.0
        for k in range(r):
            w *= n - k
        total += w * photon_distribution(state, n)
    return total


# x = 1.0 sits outside the unit-disc domain of p = q+1 families, so those
# use 0.9 instead
GRID = [
    (ParamSet([], []), [0.1, 0.5, 1.0]),
    (ParamSet([1.5], []), [0.1, 0.5, 0.9]),
    (ParamSet([1.4], [2.2]), [0.1, 0.5, 1.0]),
]


class TestExpectationValues:
    def test_lowering_expectation_vanishes(self):
        st = StateSpec(ParamSet([1.2], [2.0]), Parity.EVEN, 0.6)
        assert expect_adagS_aR(st, 1, 0) == 0j
        assert expect_adagS_aR(st, 0, 1) == 0j

    def test_even_cat_number_expectation(self):
        # <N>_e = x tanh(x) for the plain cat family
        st = StateSpec(ParamSet([], []), Parity.EVEN, 1.0)
        assert expect_N(st) == pytest.approx(math.tanh(1.0), rel=1e-12)
        got = expect_adagS_aR(st, 1, 1)
        assert got.real == pytest.approx(math.tanh(1.0), rel=1e-9)
        oracle = distribution_moment(st, 1)
        assert expect_N(st) == pytest.approx(oracle, rel=1e-10)

    def test_even_number_expectation_vanishes_at_origin(self):
        assert expect_N(StateSpec(ParamSet([1.3], [0.8]), Parity.EVEN, 0.0)) == 0.0

    def test_odd_states_keep_one_photon(self):
        st = StateSpec(ParamSet([], []), Parity.ODD, 1e-6)
        assert expect_N(st) == pytest.approx(1.0, abs=1e-9)
        assert expect_N2(st) == pytest.approx(1.0, abs=1e-9)

    def test_n2_oracle_agreement(self):
        st = StateSpec(ParamSet([1.2], [2.5]), Parity.EVEN, math.sqrt(0.4))
        assert expect_N2(st) == pytest.approx(distribution_moment(st, 2), rel=1e-9)

    def test_squared_lowering_oracle_on_odd_state(self):
        st = StateSpec(ParamSet([1.3], [1.9]), Parity.ODD, math.sqrt(0.7))
        got = expect_adagS_aR(st, 2, 2)
        assert got.imag == 0.0
        assert got.real == pytest.approx(distribution_falling_moment(st, 2), rel=1e-9)

    @pytest.mark.parametrize("params,xs", GRID)
    @pytest.mark.parametrize("parity", [Parity.EVEN, Parity.ODD])
    def test_oracle_equivalence_grid(self, params, xs, parity):
        for x in xs:
            st = StateSpec(params, parity, math.sqrt(x))
            assert expect_N(st) == pytest.approx(distribution_moment(st, 1), rel=1e-8)
            assert expect_N2(st) == pytest.approx(distribution_moment(st, 2), rel=1e-8)
            for r in (1, 2, 3):
                got = expect_adagS_aR(st, r, r).real
                assert got == pytest.approx(
                    distribution_falling_moment(st, r), rel=1e-8, abs=1e-30
                )
                assert factorial_moment(st, r) == pytest.approx(
                    got, rel=1e-10, abs=1e-30
                )

    def test_parity_changing_operators_average_to_zero(self):
        for parity in (Parity.EVEN, Parity.ODD):
            st = StateSpec(ParamSet([1.6], [1.1]), parity, 0.7)
            for s, r in [(1, 0), (0, 1), (2, 1), (1, 2), (3, 0)]:
                assert expect_adagS_aR(st, s, r) == 0j

    def test_off_diagonal_operator_matches_amplitude_oracle(self):
        from hypercat import fock_amplitudes

        st = StateSpec(ParamSet([1.5], [2.1]), Parity.EVEN, 0.5 * np.exp(0.3j))
        got = expect_adagS_aR(st, 2, 0)
        c = fock_amplitudes(st, 80).amplitudes
        n = np.arange(78)
        oracle = np.sum(np.conj(c[2:80]) * c[:78] * np.sqrt((n + 1) * (n + 2)))
        assert got == pytest.approx(oracle, rel=1e-9)

    def test_rejects_full_states_and_bad_orders(self):
        full = StateSpec(ParamSet([], []), Parity.FULL, 0.5)
        with pytest.raises(ValidationError):
            expect_N(full)
        st = StateSpec(ParamSet([], []), Parity.EVEN, 0.5)
        with pytest.raises(ValidationError):
            expect_adagS_aR(st, -1, 1)


class TestMandelQ:
    def test_small_x_limits_single_numerator(self):
        for a in (1.2, 2.0, 5.0):
            ps = ParamSet([a], [])
            qe = mandel_Q(StateSpec(ps, Parity.EVEN, math.sqrt(1e-3)))
            qo = mandel_Q(StateSpec(ps, Parity.ODD, math.sqrt(1e-3)))
            assert qe.q_value == pytest.approx(1.0, abs=1e-5)
            assert qo.q_value == pytest.approx(-1.0, abs=1e-5)

    def test_plain_cat_closed_form(self):
        st = StateSpec(ParamSet([], []), Parity.EVEN, 1.0)
        expected = 1.0 / math.tanh(1.0) - math.tanh(1.0)
        r = mandel_Q(st)
        assert r.q_value == pytest.approx(expected, rel=1e-12)
        assert r.mean_n2 >= r.mean_n**2
        assert r.q_value == pytest.approx(
            (r.mean_n2 - r.mean_n**2) / r.mean_n - 1.0, abs=1e-9
        )

    def test_sign_laws_at_small_x(self):
        for ps in (ParamSet([], []), ParamSet([], [1.7]), ParamSet([1.5], []), ParamSet([1.2], [2.0])):
            z = math.sqrt(1e-3)
            assert mandel_Q(StateSpec(ps, Parity.EVEN, z)).q_value > 0.0
            assert mandel_Q(StateSpec(ps, Parity.ODD, z)).q_value < 0.0

    def test_degenerate_at_origin(self):
        with pytest.raises(DegenerateStateError):
            mandel_Q(StateSpec(ParamSet([], []), Parity.EVEN, 0.0))

    def test_cross_validation_on_grid(self):
        for params, xs in GRID:
            for parity in (Parity.EVEN, Parity.ODD):
                for x in xs:
                    r = mandel_Q(StateSpec(params, parity, math.sqrt(x)))
                    q_def = (r.mean_n2 - r.mean_n**2) / r.mean_n - 1.0
                    assert abs(r.q_value - q_def) <= 1e-9 * max(1.0, abs(q_def))


class TestSampler:
    def test_even_states_give_even_counts(self):
        st = StateSpec(ParamSet([], []), Parity.EVEN, 1.0)
        s = sample_photon_counts(st, 5000, 1)
        assert np.all(s % 2 == 0)

    def test_deterministic_under_seed(self):
        st = StateSpec(ParamSet([1.4], [2.2]), Parity.ODD, 0.7)
        s1 = sample_photon_counts(st, 4000, 123)
        s2 = sample_photon_counts(st, 4000, 123)
        s3 = sample_photon_counts(st, 4000, 124)
        np.testing.assert_array_equal(s1, s2)
        assert not np.array_equal(s1, s3)

    def test_empirical_q_matches_closed_form(self):
        st = StateSpec(ParamSet([], []), Parity.EVEN, 1.0)
        s = sample_photon_counts(st, 200_000, 77)
        summary = photon_count_summary(s, Parity.EVEN)
        expected = 1.0 / math.tanh(1.0) - math.tanh(1.0)
        assert abs(summary["q_empirical"] - expected) <= 5 * summary["se_q"]
        assert summary["parity_violations"] == 0

    def test_truncated_pmf_tail(self):
        st = StateSpec(ParamSet([], []), Parity.EVEN, 1.0)
        levels, probs = _truncated_pmf(st)
        assert 1.0 - probs.sum() < 1e-12
        assert np.all(levels % 2 == 0)

    def test_rejects_empty_request(self):
        st = StateSpec(ParamSet([], []), Parity.EVEN, 1.0)
        with pytest.raises(ValidationError):
            sample_photon_counts(st, 0, 1)


class TestThermal:
    def test_partition_freezes_to_ground_state(self):
        assert thermal_partition(ThermalSpec(50.0, 1.0)) == pytest.approx(1.0, abs=1e-12)

    def test_partition_geometric_half(self):
        assert thermal_partition(ThermalSpec(math.log(2.0), 1.0)) == pytest.approx(2.0, rel=1e-14)

    def test_partition_geometric_sum_oracle(self):
        z = sum(math.exp(-n) for n in range(50))
        assert thermal_partition(ThermalSpec(1.0, 1.0)) == pytest.approx(z, rel=1e-14)

    def test_zeroth_moment_is_identity(self):
        assert thermal_normal_moment(ThermalSpec(0.7, 1.3), 0) == 1.0

    def test_mean_occupation(self):
        assert thermal_normal_moment(ThermalSpec(1.0, 1.0), 1) == pytest.approx(
            1.0 / (math.e - 1.0), rel=1e-14
        )

    def test_third_moment_against_direct_sum(self):
        t = ThermalSpec(0.7, 1.0)
        direct = thermal_factorial_moment_direct(t, 3)
        assert thermal_normal_moment(t, 3) == pytest.approx(direct, rel=1e-13)

    @pytest.mark.parametrize("bw", [0.5, 1.0, 3.0])
    def test_factorial_moment_identity(self, bw):
        t = ThermalSpec(bw, 1.0)
        nbar = 1.0 / (math.exp(bw) - 1.0)
        for r in range(7):
            expected = math.factorial(r) * nbar**r
            assert thermal_normal_moment(t, r) == pytest.approx(expected, rel=1e-12)

    def test_invalid_spec_rejected(self):
        with pytest.raises(ValidationError):
            ThermalSpec(-1.0, 1.0)
        with pytest.raises(ValidationError):
            ThermalSpec(1.0, 0.0)
