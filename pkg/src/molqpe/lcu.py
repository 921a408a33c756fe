"""Truncated-Taylor approximation of time evolution over Pauli sums.

The evolution ``exp(-i H t)`` is split into ``segments`` equal factors and
each factor is approximated by the Taylor polynomial of degree ``order`` in
``-i H t / segments``, computed exactly in the Pauli-string algebra.  The
result is generally nonunitary; applying it with renormalization models a
postselected run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import statevec
from .pauli import PauliSum, is_hermitian_as_sum, sum_add, sum_mul, to_dense
from .statevec import EvolutionOperator, StateVector

#: Cap on intermediate term counts while expanding powers of the Hamiltonian.
TERM_BUDGET = 100_000


class TermBudgetError(RuntimeError):
    """Raised when a power of the Hamiltonian outgrows the term budget."""

    def __init__(self, order: int, count: int, budget: int):
        self.order = order
        super().__init__(
            f"power {order} of the Hamiltonian has {count} terms, "
            f"exceeding the budget of {budget}"
        )


@dataclass(frozen=True)
class LcuConfig:
    """Expansion order, segment count, and total evolution time."""

    order: int
    segments: int = 1
    time: float = 1.0

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"order must be >= 0, got {self.order}")
        if self.segments < 1:
            raise ValueError(f"segments must be >= 1, got {self.segments}")
        if not math.isfinite(self.time):
            raise ValueError(f"time must be finite, got {self.time}")


@dataclass(frozen=True, eq=False)
class TaylorLcuOperator:
    """One segment's truncated expansion plus an a-priori error bound.

    ``expansion`` approximates ``exp(-i H time / segments)``;
    ``error_bound`` bounds the spectral-norm distance between the full
    ``segments``-fold product and ``exp(-i H time)``.  The exact distance
    is available from :func:`truncation_error`.
    """

    config: LcuConfig
    expansion: PauliSum
    error_bound: float

    def segment_dense(self) -> np.ndarray:
        return to_dense(self.expansion)

    def full_dense(self) -> np.ndarray:
        return np.linalg.matrix_power(self.segment_dense(), self.config.segments)

    def full_operator(self) -> EvolutionOperator:
        return EvolutionOperator(self.full_dense())


def default_segments(hamiltonian: PauliSum, t: float) -> int:
    """Smallest segment count keeping the per-segment Taylor argument <= 1.

    Uses the coefficient 1-norm as the scale of the Hamiltonian, so each
    segment's series converges fast enough for low orders to be useful.
    """
    return max(1, math.ceil(hamiltonian.one_norm() * abs(t)))


def build_taylor(
    hamiltonian: PauliSum, config: LcuConfig, term_budget: int = TERM_BUDGET
) -> TaylorLcuOperator:
    """Expand one evolution segment as a degree-``order`` Taylor polynomial."""
    if not is_hermitian_as_sum(hamiltonian):
        raise ValueError("Hamiltonian must be Hermitian")
    step = -1j * config.time / config.segments
    expansion = PauliSum.identity(hamiltonian.n)
    power = PauliSum.identity(hamiltonian.n)
    for order in range(1, config.order + 1):
        power = sum_mul(power, hamiltonian)
        if len(power) > term_budget:
            raise TermBudgetError(order, len(power), term_budget)
        expansion = sum_add(expansion, power.scaled(step**order / math.factorial(order)))
    bound = _a_priori_error_bound(hamiltonian, config)
    return TaylorLcuOperator(config, expansion, bound)


def _a_priori_error_bound(hamiltonian: PauliSum, config: LcuConfig) -> float:
    lam = hamiltonian.one_norm() * abs(config.time) / config.segments
    partial = sum(lam**order / math.factorial(order) for order in range(config.order + 1))
    tail = max(0.0, math.exp(lam) - partial)
    return config.segments * tail * max(1.0, partial) ** (config.segments - 1)


def truncation_error(hamiltonian: PauliSum, config: LcuConfig) -> float:
    """Exact spectral-norm error of the segmented truncated evolution."""
    taylor = build_taylor(hamiltonian, config)
    exact = statevec.exact_exponential(hamiltonian, config.time).matrix
    return float(np.linalg.norm(taylor.full_dense() - exact, 2))


def evolve(
    hamiltonian: PauliSum, config: LcuConfig, s: StateVector
) -> tuple[StateVector, float]:
    """Apply the truncated evolution segment by segment with postselection.

    Returns the final unit-norm state and the product of per-segment
    success probabilities, which equals the probability of all segments'
    postselections succeeding.
    """
    taylor = build_taylor(hamiltonian, config)
    op = EvolutionOperator(taylor.segment_dense())
    total_prob = 1.0
    for _ in range(config.segments):
        s, prob = statevec.apply(op, s, renormalize=True)
        total_prob *= prob
    return s, total_prob
