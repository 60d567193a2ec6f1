import itertools
import math

import numpy as np
import pytest

from eprlab.linalg import commutator, eigencheck, spectral_norm
from eprlab.states import (
    DirectionVector,
    GoldsteinParams,
    PauliStringSpec,
    bell_phi_minus,
    beta_vector,
    direction_operator,
    ghz_state,
    goldstein_state,
    pauli_string_operator,
    spin_eigenstate,
    uw_projectors,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)

INV_SQRT3 = 1.0 / math.sqrt(3.0)


class TestGhzState:
    def test_amplitudes(self):
        amp = ghz_state().amplitudes
        assert amp[0] == pytest.approx(1 / math.sqrt(2))
        assert amp[7] == pytest.approx(-1 / math.sqrt(2))
        assert np.abs(amp[1:7]).max() == 0.0

    def test_norm(self):
        assert ghz_state().norm() == pytest.approx(1.0, abs=1e-12)

    def test_simultaneous_eigenstate(self):
        state = ghz_state()
        for labels, expected in (("xyy", 1), ("yxy", 1), ("yyx", 1), ("xxx", -1)):
            lam = eigencheck(pauli_string_operator(labels), state)
            assert lam == pytest.approx(expected, abs=1e-12)

    def test_relation_operators_pairwise_commute(self):
        ops = [pauli_string_operator(lbl) for lbl in ("xyy", "yxy", "yyx", "xxx")]
        for a, b in itertools.combinations(ops, 2):
            assert np.abs(commutator(a, b).entries).max() <= 1e-14


class TestBellState:
    def test_amplitudes(self):
        amp = bell_phi_minus().amplitudes
        assert amp[0] == pytest.approx(1 / math.sqrt(2))
        assert amp[3] == pytest.approx(-1 / math.sqrt(2))
        assert amp[1] == amp[2] == 0.0

    def test_self_overlap(self):
        state = bell_phi_minus()
        assert state.overlap(state) == pytest.approx(1.0)

    def test_yy_eigenvalue(self):
        lam = eigencheck(pauli_string_operator("yy"), bell_phi_minus())
        assert lam == pytest.approx(1.0, abs=1e-12)


class TestGoldsteinParams:
    def test_normalization_with_raw_retained(self):
        p = GoldsteinParams(2.0, 0.0, 0.0)
        assert p.a == pytest.approx(1.0)
        assert p.raw == (2.0 + 0j, 0j, 0j)
        assert not p.abc_nonzero

    def test_zero_rejected(self):
        with pytest.raises(ValueError, match="vanish"):
            GoldsteinParams(0, 0, 0)

    def test_abc_flag(self):
        assert GoldsteinParams(1, 1, 1).abc_nonzero
        assert not GoldsteinParams(1, 0, 1).abc_nonzero

    def test_complex_coefficients_allowed(self):
        p = GoldsteinParams(1j, 1, -1j)
        total = abs(p.a) ** 2 + abs(p.b) ** 2 + abs(p.c) ** 2
        assert total == pytest.approx(1.0, abs=1e-12)


class TestGoldsteinState:
    def test_product_case(self):
        state = goldstein_state(GoldsteinParams(1, 0, 0))
        assert state.amplitudes[3] == pytest.approx(1.0)
        assert np.abs(state.amplitudes[:3]).max() == 0.0

    def test_symmetric_point(self):
        state = goldstein_state(GoldsteinParams(1, 1, 1))
        assert state.amplitudes[0] == 0.0
        for idx in (1, 2, 3):
            assert state.amplitudes[idx] == pytest.approx(INV_SQRT3)

    def test_up_up_amplitude_always_zero(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
            state = goldstein_state(GoldsteinParams(a, b, c))
            assert state.amplitudes[0] == 0.0

    def test_entangled_when_a_zero(self):
        # oracle: rank of the 2x2 amplitude matrix; two nonzero singular
        # values mean no product decomposition exists
        state = goldstein_state(GoldsteinParams(0, 1 / math.sqrt(2), 1 / math.sqrt(2)))
        matrix = state.amplitudes.reshape(2, 2)
        singular = np.linalg.svd(matrix, compute_uv=False)
        assert singular.min() > 1e-3


class TestBetaVector:
    def test_down_case(self):
        state = beta_vector(1, 0)
        assert state.amplitudes[1] == pytest.approx(1.0)
        assert state.amplitudes[0] == 0.0

    def test_symmetric_case(self):
        state = beta_vector(INV_SQRT3, INV_SQRT3)
        assert state.amplitudes == pytest.approx(
            np.array([1, 1]) / math.sqrt(2), abs=1e-12
        )

    def test_normalized_for_any_input(self):
        rng = np.random.default_rng(22)
        for _ in range(50):
            a, x = rng.normal(size=2) + 1j * rng.normal(size=2)
            assert beta_vector(a, x).norm() == pytest.approx(1.0, abs=1e-12)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            beta_vector(0, 0)


class TestUwProjectors:
    def test_u1_structure(self):
        u1, _, _, _ = uw_projectors(GoldsteinParams(1, 1, 1))
        expected = np.kron(np.diag([1.0, 0.0]), I2)
        assert np.abs(u1.entries - expected).max() <= 1e-14

    def test_w_reduces_to_u_when_a_zero(self):
        u1, w1, u2, w2 = uw_projectors(GoldsteinParams(0, 1, 1))
        assert np.abs(w1.entries - u1.entries).max() <= 1e-14
        assert np.abs(w2.entries - u2.entries).max() <= 1e-14

    def test_idempotent_at_symmetric_point(self):
        # oracle: direct multiplication
        for p in uw_projectors(GoldsteinParams(1, 1, 1)):
            assert np.abs(p.entries @ p.entries - p.entries).max() <= 1e-14
            assert np.abs(p.entries - p.entries.conj().T).max() <= 1e-14

    def test_acts_as_identity_on_other_particle(self):
        p = GoldsteinParams(0.3, 0.8, 0.2)
        u1, w1, u2, w2 = uw_projectors(p)
        # oracle: rebuild with explicit kron against literal identity
        w1_single = w1.entries[::2, ::2]  # block sampling of w (x) I
        assert np.abs(w1.entries - np.kron(w1_single, I2)).max() <= 1e-14
        w2_single = w2.entries[:2, :2]
        assert np.abs(w2.entries - np.kron(I2, w2_single)).max() <= 1e-14

    def test_commutator_norm_zero_iff_product_zero(self):
        cases = [
            (GoldsteinParams(1, 0, 1), 1, True),
            (GoldsteinParams(0, 1, 1), 1, True),
            (GoldsteinParams(1, 1, 0), 2, True),
            (GoldsteinParams(1, 1, 1), 1, False),
            (GoldsteinParams(1, 1, 1), 2, False),
        ]
        for p, i, expect_zero in cases:
            u1, w1, u2, w2 = uw_projectors(p)
            u, w = (u1, w1) if i == 1 else (u2, w2)
            norm = spectral_norm(commutator(u, w))
            assert (norm <= 1e-12) == expect_zero


class TestPauliStrings:
    def test_single_particle(self):
        assert np.array_equal(pauli_string_operator("x").entries, SX)

    def test_spec_validation(self):
        with pytest.raises(ValueError, match="axis label"):
            PauliStringSpec(("x", "q"))
        with pytest.raises(ValueError, match="non-identity"):
            PauliStringSpec(("i", "i"))
        with pytest.raises(ValueError, match="particle count"):
            PauliStringSpec(("x",) * 5)

    def test_matches_explicit_kron(self):
        expected = np.kron(np.kron(SX, SY), SY)
        assert np.abs(pauli_string_operator("xyy").entries - expected).max() == 0.0

    def test_identity_label(self):
        expected = np.kron(SX, I2)
        assert np.array_equal(pauli_string_operator("xi").entries, expected)


class TestDirectionOperator:
    def test_axis_cases(self):
        assert np.array_equal(direction_operator(DirectionVector(0, 0, 1)).entries, SZ)
        assert np.array_equal(direction_operator(DirectionVector(1, 0, 0)).entries, SX)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError, match="unit"):
            DirectionVector(1, 1, 0)

    def test_eigenvalues_plus_minus_one(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            v = rng.normal(size=3)
            v /= np.linalg.norm(v)
            op = direction_operator(DirectionVector(*v))
            eigs = np.sort(np.linalg.eigvalsh(op.entries))
            assert eigs == pytest.approx([-1.0, 1.0], abs=1e-12)

    def test_commutator_norm_is_twice_sine(self):
        # oracle: angle from the dot product of the two unit vectors
        rng = np.random.default_rng(24)
        for _ in range(50):
            u, v = rng.normal(size=(2, 3))
            u /= np.linalg.norm(u)
            v /= np.linalg.norm(v)
            theta = math.acos(np.clip(np.dot(u, v), -1.0, 1.0))
            norm = spectral_norm(
                commutator(
                    direction_operator(DirectionVector(*u)),
                    direction_operator(DirectionVector(*v)),
                )
            )
            assert norm == pytest.approx(2.0 * abs(math.sin(theta)), abs=1e-10)


class TestSpinEigenstates:
    @pytest.mark.parametrize("axis,matrix", [("x", SX), ("y", SY), ("z", SZ)])
    @pytest.mark.parametrize("sign", [1, -1])
    def test_eigenrelation(self, axis, matrix, sign):
        state = spin_eigenstate(axis, sign)
        image = matrix @ state.amplitudes
        assert np.abs(image - sign * state.amplitudes).max() <= 1e-14

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            spin_eigenstate("x", 0)
