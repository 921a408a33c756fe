"""Second-quantized ladder operators and their qubit encoding.

Mode ``j`` maps to qubit ``j``.  An annihilation operator on mode ``j``
becomes ``I^(n-j-1) (x) (X+iY)/2 (x) Z^j`` (reading tensor factors left to
right in the string convention of :mod:`molqpe.pauli`); creation uses
``(X-iY)/2``.  The parity Z-chain covers qubits ``0..j-1``, matching the
occupation-number sign rule ``(-1)^(number of occupied modes below j)`` used
by the dense oracle in :func:`ladder_dense`, so the two constructions agree
entry for entry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import DENSE_QUBIT_LIMIT, PauliSum, sum_add, sum_mul


@dataclass(frozen=True)
class LadderOp:
    """A single creation (``dagger=True``) or annihilation operator."""

    mode: int
    dagger: bool

    def __post_init__(self):
        if self.mode < 0:
            raise ValueError(f"mode index must be nonnegative, got {self.mode}")


@dataclass(frozen=True)
class FermionTerm:
    """Coefficient times an ordered product of ladder operators."""

    coeff: complex
    factors: tuple[LadderOp, ...]


@dataclass(frozen=True)
class FermionSum:
    """A linear combination of ladder-operator products on ``n_modes`` modes."""

    n_modes: int
    terms: tuple[FermionTerm, ...]

    def __post_init__(self):
        if self.n_modes <= 0:
            raise ValueError(f"n_modes must be positive, got {self.n_modes}")
        for term in self.terms:
            for op in term.factors:
                if op.mode >= self.n_modes:
                    raise ValueError(
                        f"mode {op.mode} out of range for {self.n_modes} modes"
                    )

    @classmethod
    def from_one_body(cls, h: np.ndarray) -> "FermionSum":
        """Build ``sum_ij h[i,j] a_i^dag a_j`` from a coefficient matrix."""
        h = np.asarray(h)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {h.shape}")
        d = h.shape[0]
        terms = [
            FermionTerm(complex(h[i, j]), (LadderOp(i, True), LadderOp(j, False)))
            for i in range(d)
            for j in range(d)
            if abs(h[i, j]) > 0.0
        ]
        return cls(d, tuple(terms))


def jw_ladder(j: int, dagger: bool, n_modes: int) -> PauliSum:
    """Qubit encoding of a single ladder operator as a two-term Pauli sum."""
    if not 0 <= j < n_modes:
        raise ValueError(f"mode {j} out of range for {n_modes} modes")
    pad = "I" * (n_modes - j - 1)
    chain = "Z" * j
    y_coeff = -0.5j if dagger else 0.5j
    return PauliSum(n_modes, [(pad + "X" + chain, 0.5), (pad + "Y" + chain, y_coeff)])


def jw_transform(h: FermionSum) -> PauliSum:
    """Map a ladder-operator sum to its qubit Pauli-sum representation."""
    total = PauliSum.zero(h.n_modes)
    for term in h.terms:
        product = PauliSum.identity(h.n_modes, term.coeff)
        for op in term.factors:
            product = sum_mul(product, jw_ladder(op.mode, op.dagger, h.n_modes))
        total = sum_add(total, product)
    return total


def ladder_dense(j: int, dagger: bool, n_modes: int) -> np.ndarray:
    """Ladder operator built directly in the occupation-number basis.

    Basis index bit ``k`` holds the occupation of mode ``k``; annihilating
    mode ``j`` clears bit ``j`` and picks up ``(-1)^(occupied modes < j)``.
    Independent of the Pauli-string construction, so the two can be checked
    against each other.
    """
    if not 0 <= j < n_modes:
        raise ValueError(f"mode {j} out of range for {n_modes} modes")
    if n_modes > DENSE_QUBIT_LIMIT:
        raise ValueError(f"{n_modes} modes exceeds dense limit of {DENSE_QUBIT_LIMIT}")
    dim = 2**n_modes
    mat = np.zeros((dim, dim), dtype=complex)
    below = (1 << j) - 1
    for b in range(dim):
        if b >> j & 1:
            sign = -1.0 if bin(b & below).count("1") % 2 else 1.0
            mat[b ^ (1 << j), b] = sign
    return mat.T if dagger else mat
