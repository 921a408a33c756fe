"""molqpe: molecular Hamiltonians, truncated-Taylor evolution, and N-point
phase estimation, with exact dense-matrix checks at every stage."""

__version__ = "0.1.0"

from .pauli import (
    PauliString,
    PhasedPauli,
    PauliSum,
    PauliTextError,
    mul_single,
    mul_strings,
    sum_add,
    sum_mul,
    to_dense,
    is_hermitian_as_sum,
    parse_pauli_text,
    format_pauli_text,
)
from .fermion import LadderOp, FermionTerm, FermionSum, jw_ladder, jw_transform, ladder_dense
from .chem import (
    FIXTURE_NAMES,
    MoleculeSpec,
    OverlapMatrix,
    OrbitalBasis,
    OneBodyHamiltonian,
    build_overlap,
    gram_schmidt,
    build_hamiltonian,
    load_fixture,
)
from .statevec import (
    StateVector,
    EvolutionOperator,
    apply,
    apply_pauli_sum,
    controlled_apply,
    controlled_powers,
    eig_hermitian,
    exact_exponential,
    fidelity,
)
from .lcu import LcuConfig, TaylorLcuOperator, TermBudgetError, build_taylor, \
    default_segments, evolve, truncation_error
from .pea import (
    PeaConfig,
    PhaseDistribution,
    decode_energy,
    find_peaks,
    inverse_dft_matrix,
    run_pea,
    sample_counts,
)

__all__ = [
    "PauliString",
    "PhasedPauli",
    "PauliSum",
    "PauliTextError",
    "mul_single",
    "mul_strings",
    "sum_add",
    "sum_mul",
    "to_dense",
    "is_hermitian_as_sum",
    "parse_pauli_text",
    "format_pauli_text",
    "LadderOp",
    "FermionTerm",
    "FermionSum",
    "jw_ladder",
    "jw_transform",
    "ladder_dense",
    "FIXTURE_NAMES",
    "MoleculeSpec",
    "OverlapMatrix",
    "OrbitalBasis",
    "OneBodyHamiltonian",
    "build_overlap",
    "gram_schmidt",
    "build_hamiltonian",
    "load_fixture",
    "StateVector",
    "EvolutionOperator",
    "apply",
    "apply_pauli_sum",
    "controlled_apply",
    "controlled_powers",
    "eig_hermitian",
    "exact_exponential",
    "fidelity",
    "LcuConfig",
    "TaylorLcuOperator",
    "TermBudgetError",
    "build_taylor",
    "default_segments",
    "evolve",
    "truncation_error",
    "PeaConfig",
    "PhaseDistribution",
    "decode_energy",
    "find_peaks",
    "inverse_dft_matrix",
    "run_pea",
    "sample_counts",
    "__version__",
]
