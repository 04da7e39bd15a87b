"""Tests for parameter containers, Bloch coordinates, and state validation."""

import numpy as np
import pytest

from qsync import (
    BlochVector3,
    DegenerateModelError,
    SystemParams,
    as_bloch,
    bloch_from_density,
    density_from_bloch,
    validate_state,
)


class TestSystemParams:
    def test_accepts_plain_rates(self):
        p = SystemParams(gamma_g=3.0, gamma_d=1.0)
        assert p.epsilon == 0.0
        assert p.delta == 0.0
        assert p.rate_sum == 4.0

    def test_rejects_negative_rates(self):
        with pytest.raises(ValueError):
            SystemParams(gamma_g=-1.0, gamma_d=1.0)
        with pytest.raises(ValueError):
            SystemParams(gamma_g=1.0, gamma_d=-0.5)

    def test_rejects_both_rates_zero(self):
        with pytest.raises(DegenerateModelError):
            SystemParams(gamma_g=0.0, gamma_d=0.0)

    def test_rejects_negative_drive(self):
        with pytest.raises(ValueError):
            SystemParams(gamma_g=1.0, gamma_d=1.0, epsilon=-0.1)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            SystemParams(gamma_g=np.inf, gamma_d=1.0)
        with pytest.raises(ValueError):
            SystemParams(gamma_g=1.0, gamma_d=1.0, delta=np.nan)

    def test_detuning_consistency_enforced(self):
        # delta must equal omega0 - omega when both frequencies are given
        p = SystemParams(gamma_g=1.0, gamma_d=1.0, delta=2.0, omega0=5.0, omega=3.0)
        assert p.delta == 2.0
        with pytest.raises(ValueError):
            SystemParams(gamma_g=1.0, gamma_d=1.0, delta=1.0, omega0=5.0, omega=3.0)

    def test_frozen(self):
        p = SystemParams(gamma_g=1.0, gamma_d=1.0)
        with pytest.raises(AttributeError):
            p.gamma_g = 2.0


class TestBlochConversions:
    def test_density_from_bloch_poles(self):
        up = density_from_bloch(BlochVector3(0.0, 0.0, 1.0))
        np.testing.assert_allclose(up, np.diag([1.0, 0.0]), atol=1e-15)
        down = density_from_bloch(BlochVector3(0.0, 0.0, -1.0))
        np.testing.assert_allclose(down, np.diag([0.0, 1.0]), atol=1e-15)

    def test_density_from_bloch_equator(self):
        rho = density_from_bloch(BlochVector3(1.0, 0.0, 0.0))
        np.testing.assert_allclose(rho, 0.5 * np.array([[1, 1], [1, 1]]), atol=1e-15)
        rho_y = density_from_bloch(BlochVector3(0.0, 1.0, 0.0))
        np.testing.assert_allclose(rho_y, 0.5 * np.array([[1, -1j], [1j, 1]]), atol=1e-15)

    def test_roundtrip_random_vectors(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            v = rng.uniform(-1.0, 1.0, size=3)
            n = np.linalg.norm(v)
            if n > 1.0:
                v = v / n * rng.uniform(0.0, 1.0)
            m = BlochVector3(*v)
            back = bloch_from_density(density_from_bloch(m))
            np.testing.assert_allclose(back.as_array(), m.as_array(), atol=1e-14)

    def test_rejects_vector_outside_ball(self):
        with pytest.raises(ValueError):
            density_from_bloch(BlochVector3(1.0, 1.0, 1.0))

    def test_unit_trace_and_hermitian(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            v = rng.uniform(-0.5, 0.5, size=3)
            rho = density_from_bloch(BlochVector3(*v))
            assert abs(np.trace(rho) - 1.0) < 1e-14
            np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)

    def test_as_bloch_coerces_sequences(self):
        m = as_bloch([0.1, 0.2, 0.3])
        assert isinstance(m, BlochVector3)
        assert m.my == 0.2
        m2 = as_bloch(m)
        assert m2 is m

    def test_norm_and_transverse(self):
        m = BlochVector3(3.0 / 13, 4.0 / 13, 12.0 / 13)
        np.testing.assert_allclose(m.norm, 1.0, atol=1e-15)
        np.testing.assert_allclose(m.transverse, 5.0 / 13, atol=1e-15)

    def test_bloch_from_density_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            bloch_from_density(np.eye(3) / 3.0)


class TestValidateState:
    def test_passes_maximally_mixed(self):
        d = validate_state(np.eye(2) / 2.0)
        assert d.passed
        assert d.hermiticity_defect < 1e-15
        assert d.trace_defect < 1e-15
        assert d.min_eigenvalue > 0.4

    def test_passes_qutrit_state(self):
        d = validate_state(np.diag([0.5, 0.3, 0.2]).astype(complex))
        assert d.passed
        assert d.dim == 3

    def test_flags_negative_eigenvalue(self):
        d = validate_state(np.diag([1.2, -0.2]).astype(complex))
        assert not d.positive_ok
        assert not d.passed

    def test_flags_bad_trace(self):
        d = validate_state(np.diag([0.6, 0.6]).astype(complex))
        assert not d.trace_ok
        assert not d.passed

    def test_flags_nonhermitian(self):
        rho = np.array([[0.5, 0.3], [0.1, 0.5]], dtype=complex)
        d = validate_state(rho)
        assert not d.hermitian_ok

    def test_rejects_unsupported_dimension(self):
        with pytest.raises(ValueError):
            validate_state(np.eye(4) / 4.0)
        with pytest.raises(ValueError):
            validate_state(np.ones((2, 3)))

    def test_small_negative_within_slack(self):
        # eigenvalue dips of rounding size are tolerated
        d = validate_state(np.diag([1.0 + 5e-10, -5e-10]).astype(complex))
        assert d.positive_ok
