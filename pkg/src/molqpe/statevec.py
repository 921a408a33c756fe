"""Dense statevector engine.

States are plain complex amplitude vectors.  System states have dimension
``2^n``; joint register-system states have dimension ``N * 2^n`` where the
register dimension ``N`` need not be a power of two.  The layout of a joint
state is register-major: entry ``k * 2^n + b`` is register value ``k`` with
system basis state ``b``.

Nonunitary operators are allowed; applying one and renormalizing models a
postselected run, with the squared norm reported as the success
probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pauli import DENSE_QUBIT_LIMIT, PauliSum, is_hermitian_as_sum, to_dense

UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-10
ANNIHILATION_TOL = 1e-14


class StateVector:
    """Complex amplitude vector; not forced to unit norm at construction."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes: np.ndarray):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.size == 0:
            raise ValueError("state vector cannot be empty")
        self.amplitudes = amps

    @classmethod
    def basis_state(cls, n_qubits: int, index: int) -> "StateVector":
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def uniform(cls, n_qubits: int) -> "StateVector":
        dim = 2**n_qubits
        return cls(np.full(dim, 1.0 / np.sqrt(dim), dtype=complex))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def n_qubits(self) -> int | None:
        n = self.dim.bit_length() - 1
        return n if 2**n == self.dim else None

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        nrm = self.norm()
        if nrm < ANNIHILATION_TOL:
            raise ValueError("cannot normalize a (near-)zero state")
        return StateVector(self.amplitudes / nrm)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim})"


def inner(a: StateVector, b: StateVector) -> complex:
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    """Squared overlap of two unit-norm states."""
    return abs(inner(a, b)) ** 2


@dataclass(frozen=True, eq=False)
class EvolutionOperator:
    """A dense operator with a cached unitarity flag."""

    matrix: np.ndarray
    unitary: bool = field(init=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)
        defect = m.conj().T @ m - np.eye(m.shape[0])
        object.__setattr__(self, "unitary", bool(np.linalg.norm(defect, 2) < UNITARY_TOL))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def apply(
    op: EvolutionOperator, s: StateVector, renormalize: bool = True
) -> tuple[StateVector, float]:
    """Apply ``op`` to ``s``; returns the new state and the squared norm.

    With ``renormalize`` the output has unit norm and the squared norm is
    the postselection success probability; a (near-)zero result means the
    state was annihilated and raises.  Without it, the raw product is
    returned alongside its squared norm.
    """
    if op.dim != s.dim:
        raise ValueError(f"dimension mismatch: operator {op.dim}, state {s.dim}")
    out = op.matrix @ s.amplitudes
    prob = float(np.linalg.norm(out) ** 2)
    if not renormalize:
        return StateVector(out), prob
    if prob < ANNIHILATION_TOL:
        raise ValueError(
            f"postselection annihilated the state (probability {prob:.3e})"
        )
    return StateVector(out / np.sqrt(prob)), prob


def eig_hermitian(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    h = np.asarray(h, dtype=complex)
    if np.abs(h - h.conj().T).max() > HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigh(h)


def exact_exponential(hamiltonian: PauliSum, t: float) -> EvolutionOperator:
    """``exp(-i H t)`` computed by eigendecomposition of the dense form."""
    if hamiltonian.n > DENSE_QUBIT_LIMIT:
        raise ValueError(
            f"{hamiltonian.n} qubits exceeds dense limit of {DENSE_QUBIT_LIMIT}"
        )
    if not is_hermitian_as_sum(hamiltonian):
        raise ValueError("Hamiltonian must be Hermitian")
    w, v = eig_hermitian(to_dense(hamiltonian))
    u = (v * np.exp(-1j * w * t)) @ v.conj().T
    return EvolutionOperator(u)


def _split_joint(joint: StateVector, register_dim: int) -> np.ndarray:
    if register_dim < 2:
        raise ValueError(f"register dimension must be >= 2, got {register_dim}")
    if joint.dim % register_dim:
        raise ValueError(
            f"joint dimension {joint.dim} does not factor into "
            f"register {register_dim} x system blocks"
        )
    return joint.amplitudes.reshape(register_dim, -1)


def controlled_apply(
    op: EvolutionOperator, joint: StateVector, control_value: int, register_dim: int
) -> StateVector:
    """Apply ``op`` to the system block whose register value equals
    ``control_value``, leaving all other blocks untouched."""
    blocks = _split_joint(joint, register_dim).copy()
    if not 0 <= control_value < register_dim:
        raise ValueError(
            f"control value {control_value} out of range for register {register_dim}"
        )
    if op.dim != blocks.shape[1]:
        raise ValueError(f"dimension mismatch: operator {op.dim}, block {blocks.shape[1]}")
    blocks[control_value] = op.matrix @ blocks[control_value]
    return StateVector(blocks.reshape(-1))


def controlled_powers(
    op: EvolutionOperator, joint: StateVector, register_dim: int
) -> StateVector:
    """Multiply the system block at register value ``k`` by ``op^k``.

    The register value acts as the exponent: block 0 is untouched, block 1
    gets ``op``, block 2 gets ``op @ op``, and so on.  This is the phase
    kickback at the heart of multi-point phase estimation.
    """
    blocks = _split_joint(joint, register_dim).copy()
    if op.dim != blocks.shape[1]:
        raise ValueError(f"dimension mismatch: operator {op.dim}, block {blocks.shape[1]}")
    power = np.eye(op.dim, dtype=complex)
    for k in range(1, register_dim):
        power = power @ op.matrix
        blocks[k] = power @ blocks[k]
    return StateVector(blocks.reshape(-1))


def apply_pauli_sum(a: PauliSum, s: StateVector) -> StateVector:
    """Apply a Pauli sum to a state without building the dense matrix.

    Works string by string with bit arithmetic; serves as an independent
    cross-check of ``to_dense``.
    """
    if s.dim != 2**a.n:
        raise ValueError(f"dimension mismatch: sum on {a.n} qubits, state dim {s.dim}")
    out = np.zeros_like(s.amplitudes)
    for string, coeff in a:
        flip = 0  # X and Y flip the qubit
        sign_mask = 0  # Z and Y read the input bit's sign
        n_y = 0
        for i, ch in enumerate(string.ops):
            bit = 1 << (a.n - 1 - i)
            if ch in "XY":
                flip |= bit
            if ch in "ZY":
                sign_mask |= bit
            if ch == "Y":
                n_y += 1
        y_phase = 1j**n_y
        for b, amp in enumerate(s.amplitudes):
            if amp == 0:
                continue
            sign = -1.0 if bin(b & sign_mask).count("1") % 2 else 1.0
            out[b ^ flip] += coeff * y_phase * sign * amp
    return StateVector(out)
