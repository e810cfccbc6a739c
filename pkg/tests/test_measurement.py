import math

import numpy as np
import pytest

from adaptive_tomo import (
    MOUNT_TO_BLOCH_ANGLE,
    PAULI_AXES,
    CountRecord,
    FixedError,
    InvalidStateError,
    NoError,
    PerExperimentError,
    PerSettingError,
    RngContext,
    bloch_to_density,
    born_probability,
    measure_setting,
    named_state,
    perturb_axes,
    sample_counts,
)

I2 = np.eye(2, dtype=complex) / 2
X, Y, Z = PAULI_AXES


def angle_between(a, b):
    return math.acos(min(max(float(np.dot(a, b)), -1.0), 1.0))


class TestRngContext:
    def test_same_labels_reproduce(self):
        a = RngContext(7).child(1, 2, 3).generator().standard_normal(5)
        b = RngContext(7).child(1, 2, 3).generator().standard_normal(5)
        assert np.array_equal(a, b)

    def test_distinct_labels_differ(self):
        a = RngContext(7).child(1, 2, 3).generator().standard_normal(5)
        b = RngContext(7).child(1, 2, 4).generator().standard_normal(5)
        assert not np.array_equal(a, b)

    def test_child_extends_labels(self):
        ctx = RngContext(5, (1,)).child(2).child(3, 4)
        assert ctx.labels == (1, 2, 3, 4)
        assert ctx.seed == 5


class TestBornProbability:
    def test_maximally_mixed(self):
        for axis in (X, Y, Z):
            assert born_probability(I2, axis) == pytest.approx(0.5, abs=1e-15)

    def test_aligned_pure_state(self):
        assert born_probability(bloch_to_density((0, 0, 1)), Z) == 1.0

    def test_target_state_along_z(self):
        # (1 + <sigma_z>)/2 with <sigma_z> = 0.5.
        assert born_probability(named_state("eq7"), Z) == pytest.approx(0.75, abs=1e-12)

    def test_outcomes_sum_to_one(self):
        rho = named_state("eq10")
        axis = np.array([0.3, -0.5, 0.8])
        axis /= np.linalg.norm(axis)
        assert born_probability(rho, axis) + born_probability(rho, -axis) == pytest.approx(
            1.0, abs=1e-15
        )


class TestSampleCounts:
    def test_certain_outcomes(self):
        rng = RngContext(1).child(0)
        assert sample_counts(1.0, 1234, rng) == 1234
        assert sample_counts(0.0, 1234, rng) == 0

    def test_binomial_moments(self):
        n, p = 10**6, 0.75
        draws = np.array(
            [sample_counts(p, n, RngContext(2).child(i)) for i in range(1000)]
        )
        freq = draws / n
        assert abs(freq.mean() - p) < 4.0 * math.sqrt(p * (1 - p) / n)
        var = draws.var(ddof=1)
        assert 0.8 * n * p * (1 - p) < var < 1.2 * n * p * (1 - p)

    def test_bit_reproducible(self):
        rng = RngContext(3).child(9, 9)
        assert sample_counts(0.4, 1000, rng) == sample_counts(0.4, 1000, rng)

    def test_lag_one_correlation_across_labels(self):
        n, p = 1000, 0.3
        draws = np.array(
            [sample_counts(p, n, RngContext(4).child(i)) for i in range(10_000)],
            dtype=float,
        )
        std = (draws - n * p) / math.sqrt(n * p * (1 - p))
        corr = np.corrcoef(std[:-1], std[1:])[0, 1]
        assert abs(corr) < 0.05

    def test_invalid_inputs(self):
        with pytest.raises(InvalidStateError):
            sample_counts(1.5, 10, RngContext(0))
        with pytest.raises(InvalidStateError):
            sample_counts(0.5, -1, RngContext(0))


class TestPerturbAxes:
    def test_zero_magnitude_is_identity(self):
        rng = RngContext(5)
        for model in (NoError(), PerSettingError(0.0), PerExperimentError(0.0),
                      FixedError(0.0)):
            out = perturb_axes(list(PAULI_AXES), model, 0, rng)
            for a, b in zip(PAULI_AXES, out):
                assert np.array_equal(a, b)

    def test_outputs_are_unit(self):
        rng = RngContext(6)
        for model in (PerSettingError(0.3), PerExperimentError(0.3),
                      FixedError(0.3)):
            for exp in range(50):
                for axis in perturb_axes(list(PAULI_AXES), model, exp, rng):
                    assert abs(np.linalg.norm(axis) - 1.0) < 1e-10

    def test_fixed_model_geometry(self):
        # A y-axis rotation applied to z tilts it toward +x in the x-z plane
        # by the Bloch angle MOUNT_TO_BLOCH_ANGLE * E.
        e = 0.01
        out = perturb_axes([Z], FixedError(e, (0.0, 1.0, 0.0)), 0, RngContext(7))[0]
        phi = MOUNT_TO_BLOCH_ANGLE * e
        assert np.allclose(out, (math.sin(phi), 0.0, math.cos(phi)), atol=1e-12)

    def test_fixed_model_identical_across_experiments(self):
        model = FixedError(0.02)
        rng = RngContext(8)
        a = perturb_axes(list(PAULI_AXES), model, 0, rng)
        b = perturb_axes(list(PAULI_AXES), model, 123, rng)
        for u, v in zip(a, b):
            assert np.array_equal(u, v)

    def test_fixed_model_skips_parallel_axis(self):
        out = perturb_axes([Y], FixedError(0.3, (0.0, 1.0, 0.0)), 0, RngContext(9))[0]
        assert np.array_equal(out, Y)

    def test_per_setting_angle_statistics(self):
        # Mount errors are Normal(0, E^2), so the root-mean-square tilt over
        # many settings approaches MOUNT_TO_BLOCH_ANGLE * E.
        e = math.radians(0.5)
        model = PerSettingError(e)
        rng = RngContext(10)
        angles = []
        for exp in range(1000):
            out = perturb_axes([Z], model, exp, rng)[0]
            angles.append(angle_between(Z, out))
        rms = math.sqrt(np.mean(np.square(angles)))
        assert 0.9 * MOUNT_TO_BLOCH_ANGLE * e < rms < 1.1 * MOUNT_TO_BLOCH_ANGLE * e

    def test_per_setting_draws_independent_per_setting(self):
        model = PerSettingError(0.05)
        rng = RngContext(11)
        a, b, c = perturb_axes(list(PAULI_AXES), model, 0, rng)
        assert angle_between(X, a) != pytest.approx(angle_between(Y, b), abs=1e-12)
        # Same experiment, different setting offset: fresh draws.
        shifted = perturb_axes([X], model, 0, rng, setting_offset=3)[0]
        assert not np.array_equal(shifted, a)

    def test_per_experiment_shares_one_draw(self):
        model = PerExperimentError(0.05)
        rng = RngContext(12)
        out = perturb_axes(list(PAULI_AXES), model, 4, rng)
        tilts = [angle_between(a, b) for a, b in zip(PAULI_AXES, out)]
        # One (angle, plane-parameter) draw for the whole experiment: every
        # setting is tilted by the same angle.
        assert tilts[0] == pytest.approx(tilts[1], abs=1e-12)
        assert tilts[0] == pytest.approx(tilts[2], abs=1e-12)
        # Batch composition does not change the realized axis.
        alone = perturb_axes([Y], model, 4, rng, setting_offset=1)[0]
        assert np.array_equal(alone, out[1])
        # A different experiment draws a different misalignment.
        other = perturb_axes(list(PAULI_AXES), model, 5, rng)
        assert angle_between(PAULI_AXES[0], other[0]) != pytest.approx(tilts[0], abs=1e-12)

    def test_negative_magnitude_rejected(self):
        with pytest.raises(InvalidStateError):
            PerSettingError(-0.1)
        with pytest.raises(InvalidStateError):
            FixedError(0.1, (2.0, 0.0, 0.0))


class TestMeasureSetting:
    def test_certain_counts_without_error(self):
        rec = measure_setting(
            bloch_to_density((0, 0, 1)), Z, 5000, NoError(), RngContext(13)
        )
        assert rec.n_plus == rec.n_shots == 5000
        assert np.array_equal(rec.intended_axis, Z)
        assert np.array_equal(rec.realized_axis, Z)

    def test_mixed_state_frequency(self):
        rec = measure_setting(I2, X, 10**6, NoError(), RngContext(14))
        assert abs(rec.frequency - 0.5) < 5.0 * 0.5 / 1000.0

    def test_fixed_error_shifts_probability(self):
        # Intended z on |0><0| with a y-axis tilt: the +1 probability becomes
        # (1 + cos(MOUNT_TO_BLOCH_ANGLE * E))/2.
        e = 0.05
        rho = bloch_to_density((0, 0, 1))
        expected = 0.5 * (1.0 + math.cos(MOUNT_TO_BLOCH_ANGLE * e))
        rec = measure_setting(
            rho, Z, 10**6, FixedError(e, (0.0, 1.0, 0.0)), RngContext(15)
        )
        assert born_probability(rho, rec.realized_axis) == pytest.approx(expected, abs=1e-12)
        assert abs(rec.frequency - expected) < 5.0 * math.sqrt(expected * (1 - expected) / 10**6)
        assert np.array_equal(rec.intended_axis, Z)

    def test_record_validation(self):
        with pytest.raises(InvalidStateError):
            CountRecord(Z, Z, 10, 11)
        with pytest.raises(InvalidStateError):
            CountRecord(Z, np.array([0.0, 0.0, 2.0]), 10, 5)
