"""N-point phase estimation over a register of arbitrary dimension.

The register is an ``N``-level index (``N`` need not be a power of two).
Estimation prepares the uniform register superposition, multiplies the
system block at register value ``k`` by ``U^k``, applies the inverse
``N``-point discrete Fourier transform ``out[K] = (1/sqrt(N)) *
sum_k exp(-2 pi i k K / N) in[k]`` to the register, and reads out the
register probabilities.

Sign convention, fixed once and asserted by the decode round trip: the
evolution operator is ``exp(-i H t)``, so an eigenvalue ``E`` produces the
register phase ``theta = frac(-E t / 2 pi)`` and the distribution peaks at
the bin nearest ``N * theta``.  Decoding inverts ``E = -2 pi (K/N + j) / t``
for the unique integer ``j`` placing ``E`` inside a caller-supplied window
no wider than one alias period ``2 pi / |t|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .statevec import EvolutionOperator, StateVector, controlled_powers

PROBABILITY_SUM_TOL = 1e-9


@dataclass(frozen=True)
class PeaConfig:
    """Register dimension, evolution time, and initial-state descriptor."""

    register_dim: int
    time: float = 1.0
    initial_state: str = "uniform"

    def __post_init__(self):
        if self.register_dim < 2:
            raise ValueError(f"register dimension must be >= 2, got {self.register_dim}")
        if self.time == 0:
            raise ValueError("evolution time must be nonzero")


@dataclass(frozen=True, eq=False)
class PhaseDistribution:
    """Register outcome probabilities with their phase axis ``2 pi K / N``."""

    register_dim: int
    probabilities: np.ndarray
    time: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        probs = np.array(self.probabilities, dtype=float)
        object.__setattr__(self, "probabilities", probs)
        if probs.size != self.register_dim:
            raise ValueError(
                f"{probs.size} probabilities for register dimension {self.register_dim}"
            )
        if probs.min() < -1e-12:
            raise ValueError("probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > PROBABILITY_SUM_TOL:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")

    @property
    def phases(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.register_dim) / self.register_dim


def inverse_dft_matrix(register_dim: int) -> np.ndarray:
    """Unitary inverse DFT with kernel ``exp(-2 pi i k K / N) / sqrt(N)``."""
    k = np.arange(register_dim)
    return np.exp(-2j * np.pi * np.outer(k, k) / register_dim) / np.sqrt(register_dim)


def run_pea(
    op: EvolutionOperator, config: PeaConfig, system_state: StateVector
) -> PhaseDistribution:
    """Estimate eigenphases of ``op`` seen by ``system_state``.

    ``op`` should be the evolution over the full time ``config.time``; its
    register-conditioned powers are taken internally.  A nonunitary ``op``
    is accepted: the joint state is renormalized once after the kickback
    (global postselection) and a warning plus the success probability are
    recorded in the metadata.
    """
    n = config.register_dim
    if op.dim != system_state.dim:
        raise ValueError(
            f"dimension mismatch: operator {op.dim}, state {system_state.dim}"
        )
    register = np.full(n, 1.0 / np.sqrt(n), dtype=complex)
    joint = StateVector(np.kron(register, system_state.normalized().amplitudes))
    joint = controlled_powers(op, joint, n)

    metadata = {"success_probability": 1.0}
    norm_sq = joint.norm() ** 2
    if not op.unitary:
        metadata["success_probability"] = norm_sq
        metadata["warnings"] = (
            "nonunitary evolution operator; joint state renormalized once "
            "(global postselection)"
        )
    blocks = joint.amplitudes.reshape(n, -1) / np.sqrt(norm_sq)
    register_out = inverse_dft_matrix(n) @ blocks
    probabilities = (np.abs(register_out) ** 2).sum(axis=1)
    return PhaseDistribution(n, probabilities, config.time, metadata)


def decode_energy(
    peak_index: int, config: PeaConfig, window: tuple[float, float]
) -> float:
    """Invert a register peak into an energy inside ``[window[0], window[1])``.

    The peak at bin ``K`` fixes the phase fraction ``K/N`` but not its
    integer part, so the energy is ``-2 pi (K/N + j) / t`` for some integer
    ``j``; the window (at most one alias period ``2 pi / |t|`` wide) must
    select exactly one candidate.
    """
    lo, hi = window
    if not lo < hi:
        raise ValueError(f"empty window ({lo}, {hi})")
    t = config.time
    n = config.register_dim
    fraction = peak_index / n
    # E(j) = -2 pi (fraction + j) / t; scan the j range mapping into the window.
    bounds = sorted((-hi * t / (2 * np.pi) - fraction, -lo * t / (2 * np.pi) - fraction))
    candidates = [
        -2.0 * np.pi * (fraction + j) / t
        for j in range(math.floor(bounds[0]) - 1, math.ceil(bounds[1]) + 2)
        if lo <= -2.0 * np.pi * (fraction + j) / t < hi
    ]
    if not candidates:
        raise ValueError(f"no energy with phase fraction {fraction} in [{lo}, {hi})")
    if len(candidates) > 1:
        raise ValueError(
            f"window [{lo}, {hi}) is wider than one alias period; "
            f"candidates {candidates}"
        )
    return candidates[0]


def find_peaks(dist: PhaseDistribution, count: int) -> list[tuple[int, float]]:
    """The ``count`` most probable register values, ties broken by lower K."""
    if count > dist.register_dim:
        raise ValueError(f"count {count} exceeds register dimension {dist.register_dim}")
    order = sorted(range(dist.register_dim), key=lambda k: (-dist.probabilities[k], k))
    return [(k, float(dist.probabilities[k])) for k in order[:count]]


def sample_counts(dist: PhaseDistribution, shots: int, seed: int) -> np.ndarray:
    """Multinomial shot counts over the register bins (seeded, reproducible).

    Realism aid only; the distributions themselves are exact.
    """
    rng = np.random.default_rng(seed)
    probs = dist.probabilities / dist.probabilities.sum()
    return rng.multinomial(shots, probs)
