import numpy as np
import pytest

from molqpe.chem import load_fixture
from molqpe.lcu import LcuConfig, build_taylor, truncation_error
from molqpe.pauli import PauliSum, to_dense
from molqpe.statevec import (
    EvolutionOperator,
    StateVector,
    apply,
    apply_pauli_sum,
    controlled_apply,
    controlled_powers,
    eig_hermitian,
    exact_exponential,
    fidelity,
    inner,
)


def random_state(rng, dim):
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(amps).normalized()


class TestApply:
    def test_identity(self):
        s = StateVector.uniform(2)
        out, prob = apply(EvolutionOperator(np.eye(4)), s)
        assert prob == pytest.approx(1.0)
        assert np.array_equal(out.amplitudes, s.amplitudes)

    def test_projector_measurement(self):
        plus = StateVector(np.array([1, 1]) / np.sqrt(2))
        out, prob = apply(EvolutionOperator(np.diag([1.0, 0.0])), plus)
        assert prob == pytest.approx(0.5)
        assert np.allclose(out.amplitudes, [1, 0])

    def test_unitary_success_probability_is_one(self):
        rng = np.random.default_rng(1)
        u = exact_exponential(load_fixture("H2-nospin"), 0.7)
        assert u.unitary
        for _ in range(5):
            _, prob = apply(u, random_state(rng, 4))
            assert abs(prob - 1.0) < 1e-10

    def test_no_renormalize_returns_raw(self):
        s = StateVector(np.array([1, 0], dtype=complex))
        out, prob = apply(EvolutionOperator(0.5 * np.eye(2)), s, renormalize=False)
        assert prob == pytest.approx(0.25)
        assert np.allclose(out.amplitudes, [0.5, 0])

    def test_annihilation_raises(self):
        one = StateVector(np.array([0, 1], dtype=complex))
        with pytest.raises(ValueError, match="annihilated"):
            apply(EvolutionOperator(np.diag([1.0, 0.0])), one)

    def test_truncated_evolution_success_probability_band(self):
        # norm inequality: | ||Vs|| - 1 | <= spectral error of V vs exact
        h = load_fixture("H2-nospin")
        config = LcuConfig(order=2, segments=1, time=1.0)
        eps = truncation_error(h, config)
        op = EvolutionOperator(build_taylor(h, config).segment_dense())
        rng = np.random.default_rng(2)
        for _ in range(10):
            _, prob = apply(op, random_state(rng, 4))
            assert max(0.0, 1.0 - eps) ** 2 - 1e-12 <= prob <= (1.0 + eps) ** 2 + 1e-12


class TestEig:
    def test_diagonal(self):
        w, v = eig_hermitian(np.diag([3.0, -1.0]))
        assert np.allclose(w, [-1.0, 3.0])
        assert np.allclose(np.abs(v), [[0, 1], [1, 0]])

    def test_pauli_x(self):
        w, v = eig_hermitian(np.array([[0, 1], [1, 0]], dtype=complex))
        assert np.allclose(w, [-1.0, 1.0])
        minus = np.array([1, -1]) / np.sqrt(2)
        plus = np.array([1, 1]) / np.sqrt(2)
        assert abs(np.vdot(minus, v[:, 0])) == pytest.approx(1.0)
        assert abs(np.vdot(plus, v[:, 1])) == pytest.approx(1.0)

    def test_fixture_reconstruction(self):
        for name in ("H2-nospin", "H2-spin", "He2-nospin"):
            dense = to_dense(load_fixture(name))
            w, v = eig_hermitian(dense)
            rebuilt = (v * w) @ v.conj().T
            assert np.abs(rebuilt - dense).max() < 1e-10
            for k in range(len(w)):
                assert np.abs(dense @ v[:, k] - w[k] * v[:, k]).max() < 1e-9 * max(1, abs(w[k]))

    def test_ascending(self):
        w, _ = eig_hermitian(to_dense(load_fixture("He2-nospin")))
        assert (np.diff(w) >= 0).all()

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            eig_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


class TestExactExponential:
    def test_zero_hamiltonian(self):
        u = exact_exponential(PauliSum.zero(1), 1.0)
        assert np.allclose(u.matrix, np.eye(2))

    def test_z_at_pi(self):
        u = exact_exponential(PauliSum(1, {"Z": 1.0}), np.pi)
        assert np.abs(u.matrix - (-np.eye(2))).max() < 1e-12

    def test_fixture_unitary_and_eigenphases(self):
        h = load_fixture("H2-nospin")
        u = exact_exponential(h, 1.0)
        assert u.unitary
        defect = u.matrix.conj().T @ u.matrix - np.eye(4)
        assert np.linalg.norm(defect, 2) < 1e-10
        w, v = eig_hermitian(to_dense(h))
        for k in range(4):
            assert np.abs(u.matrix @ v[:, k] - np.exp(-1j * w[k]) * v[:, k]).max() < 1e-10

    def test_group_law(self):
        for name in ("H2-nospin", "He2-nospin"):
            h = load_fixture(name)
            u1 = exact_exponential(h, 0.3).matrix
            u2 = exact_exponential(h, 0.9).matrix
            u12 = exact_exponential(h, 1.2).matrix
            assert np.abs(u1 @ u2 - u12).max() < 1e-9

    def test_rejects_non_hermitian_sum(self):
        with pytest.raises(ValueError, match="Hermitian"):
            exact_exponential(PauliSum(1, {"X": 1j}), 1.0)


class TestControlled:
    def test_identity_leaves_state(self):
        joint = StateVector(np.arange(1, 9, dtype=complex) / np.sqrt(204))
        out = controlled_powers(EvolutionOperator(np.eye(2)), joint, 4)
        assert np.array_equal(out.amplitudes, joint.amplitudes)

    def test_single_branch_application(self):
        phi = 0.8
        op = EvolutionOperator(np.diag([1.0, np.exp(1j * phi)]))
        reg = np.array([1, 1]) / np.sqrt(2)
        sys = np.array([0, 1], dtype=complex)
        joint = StateVector(np.kron(reg, sys))
        out = controlled_apply(op, joint, 1, 2)
        expected = np.kron(np.array([1, np.exp(1j * phi)]) / np.sqrt(2), sys)
        assert np.abs(out.amplitudes - expected).max() < 1e-14

    def test_phase_kickback_powers(self):
        phi = 0.37
        op = EvolutionOperator(np.diag([1.0, np.exp(1j * phi)]))
        reg = np.full(4, 0.5)
        sys = np.array([0, 1], dtype=complex)
        joint = StateVector(np.kron(reg, sys))
        out = controlled_powers(op, joint, 4)
        register_amps = out.amplitudes.reshape(4, 2)[:, 1]
        expected = 0.5 * np.exp(1j * phi * np.arange(4))
        assert np.abs(register_amps - expected).max() < 1e-12

    def test_control_value_out_of_range(self):
        joint = StateVector(np.ones(8, dtype=complex))
        with pytest.raises(ValueError, match="control value"):
            controlled_apply(EvolutionOperator(np.eye(2)), joint, 4, 4)

    def test_dimension_mismatch(self):
        joint = StateVector(np.ones(6, dtype=complex))
        with pytest.raises(ValueError, match="mismatch"):
            controlled_powers(EvolutionOperator(np.eye(4)), joint, 3)


class TestPauliApplication:
    def test_matches_dense_matvec(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            n = int(rng.integers(1, 5))
            labels = set()
            while len(labels) < 4:
                labels.add("".join(rng.choice(list("IXYZ"), size=n)))
            coeffs = rng.normal(size=4) + 1j * rng.normal(size=4)
            ps = PauliSum(n, zip(labels, coeffs))
            s = random_state(rng, 2**n)
            direct = apply_pauli_sum(ps, s)
            assert np.abs(direct.amplitudes - to_dense(ps) @ s.amplitudes).max() < 1e-12


class TestStateVector:
    def test_basis_and_uniform(self):
        b = StateVector.basis_state(2, 3)
        assert b.amplitudes[3] == 1.0 and b.norm() == 1.0
        u = StateVector.uniform(3)
        assert u.dim == 8 and abs(u.norm() - 1.0) < 1e-12

    def test_n_qubits_only_for_powers_of_two(self):
        assert StateVector(np.ones(8)).n_qubits == 3
        assert StateVector(np.ones(12)).n_qubits is None

    def test_inner_and_fidelity(self):
        a = StateVector(np.array([1, 0], dtype=complex))
        b = StateVector(np.array([1, 1], dtype=complex) / np.sqrt(2))
        assert inner(a, b) == pytest.approx(1 / np.sqrt(2))
        assert fidelity(a, b) == pytest.approx(0.5)

    def test_normalize_zero_rejected(self):
        with pytest.raises(ValueError, match="zero"):
            StateVector(np.zeros(4)).normalized()
