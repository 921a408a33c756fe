"""Overlap matrices, metric orthonormalization, and one-body Hamiltonians.

Three named diatomic systems are supported, each with a fixed overlap
pattern parameterized by the scalars ``s`` (1s-1s), ``s1`` (1s-2s), and
``s2`` (2s-2s):

* ``H2-nospin``: 2x2 ``[[1, s], [s, 1]]`` over (1s_A, 1s_B).
* ``H2-spin``: 4x4 block diagonal over (1s_A_up, 1s_A_dn, 1s_B_up,
  1s_B_dn), with ``s`` coupling the up/down orbitals on the *same* atom and
  no coupling between atoms.  Note this places the overlap between
  opposite-spin orbitals on one site, where a physical overlap integral
  would couple same-spin orbitals on different sites; the pattern is kept
  as is rather than second-guessed.
* ``He2-nospin``: 4x4 over (1s_A, 1s_B, 2s_A, 2s_B) with ``s`` on 1s-1s
  cross-site, ``s1`` on 1s-2s cross-site, ``s2`` on 2s-2s cross-site, and
  zero same-site 1s-2s overlap.

``custom`` uses the identity overlap of whatever dimension the supplied
one-body matrix has.

Named systems also ship with reference Pauli-sum Hamiltonians (see
:func:`load_fixture`); these are authoritative data files, independent of
the constructive path above.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .fermion import FermionSum
from .pauli import PauliSum, parse_pauli_text

FIXTURE_NAMES = ("H2-nospin", "H2-spin", "He2-nospin")

_FIXTURE_FILES = {
    "H2-nospin": "h2_nospin.txt",
    "H2-spin": "h2_spin.txt",
    "He2-nospin": "he2_nospin.txt",
}

_LABELS = {
    "H2-nospin": ("1s_A", "1s_B"),
    "H2-spin": ("1s_A_up", "1s_A_dn", "1s_B_up", "1s_B_dn"),
    "He2-nospin": ("1s_A", "1s_B", "2s_A", "2s_B"),
}

GRAM_SCHMIDT_PIVOT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class OverlapMatrix:
    """Symmetric, unit-diagonal, positive-definite orbital inner products."""

    entries: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        object.__setattr__(self, "entries", entries)
        d = entries.shape[0]
        if entries.shape != (d, d):
            raise ValueError(f"overlap matrix must be square, got {entries.shape}")
        if len(self.labels) != d:
            raise ValueError(f"{len(self.labels)} labels for a {d}x{d} matrix")
        if not np.allclose(entries, entries.T, atol=1e-12):
            raise ValueError("overlap matrix must be symmetric")
        if not np.allclose(np.diag(entries), 1.0, atol=1e-12):
            raise ValueError("overlap matrix must have unit diagonal")
        lo = np.linalg.eigvalsh(entries)[0]
        if lo <= 0.0:
            raise ValueError(
                f"overlap matrix is not positive definite (min eigenvalue {lo:.3e}); "
                "orbital overlaps are too large"
            )

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class OrbitalBasis:
    """Columns express orthonormal virtual orbitals over the atomic ones."""

    coeffs: np.ndarray

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]


@dataclass(frozen=True, eq=False)
class OneBodyHamiltonian:
    """Hermitian coefficient matrix for ``sum_ij h[i,j] a_i^dag a_j``."""

    h: np.ndarray

    def __post_init__(self):
        h = np.array(self.h, dtype=complex)
        object.__setattr__(self, "h", h)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {h.shape}")
        if np.abs(h - h.conj().T).max() > 1e-12:
            raise ValueError("one-body coefficient matrix must be Hermitian")

    @property
    def dim(self) -> int:
        return self.h.shape[0]


@dataclass(frozen=True, eq=False)
class MoleculeSpec:
    """A named overlap pattern plus its scalar parameters and optional h."""

    name: str
    s: float = 0.0
    s1: float = 0.0
    s2: float = 0.0
    one_body: OneBodyHamiltonian | None = None

    def __post_init__(self):
        if self.name not in FIXTURE_NAMES and self.name != "custom":
            raise ValueError(
                f"unknown molecule {self.name!r}; expected one of "
                f"{', '.join(FIXTURE_NAMES)} or 'custom'"
            )


def build_overlap(spec: MoleculeSpec) -> OverlapMatrix:
    """Overlap matrix for the molecule's named pattern (validated PD)."""
    s, s1, s2 = spec.s, spec.s1, spec.s2
    if spec.name == "H2-nospin":
        m = [[1, s], [s, 1]]
    elif spec.name == "H2-spin":
        m = [
            [1, s, 0, 0],
            [s, 1, 0, 0],
            [0, 0, 1, s],
            [0, 0, s, 1],
        ]
    elif spec.name == "He2-nospin":
        m = [
            [1, s, 0, s1],
            [s, 1, s1, 0],
            [0, s1, 1, s2],
            [s1, 0, s2, 1],
        ]
    elif spec.name == "custom":
        if spec.one_body is None:
            raise ValueError("custom molecule requires a one-body matrix")
        d = spec.one_body.dim
        m = np.eye(d)
        return OverlapMatrix(m, tuple(f"orb_{i}" for i in range(d)))
    else:  # pragma: no cover - guarded by MoleculeSpec
        raise ValueError(spec.name)
    return OverlapMatrix(np.array(m, dtype=float), _LABELS[spec.name])


def gram_schmidt(overlap: OverlapMatrix) -> OrbitalBasis:
    """Classical Gram-Schmidt under the overlap metric.

    Processes orbitals in label order, so the coefficient matrix is upper
    triangular with positive diagonal and satisfies ``C.T @ S @ C = I``.
    """
    g = overlap.entries
    d = overlap.dim
    c = np.zeros((d, d))
    for k in range(d):
        v = np.zeros(d)
        v[k] = 1.0
        for prev in range(k):
            v -= (c[:, prev] @ g[:, k]) * c[:, prev]
        norm_sq = v @ g @ v
        if norm_sq <= GRAM_SCHMIDT_PIVOT_TOL:
            raise ValueError(
                f"orbital {overlap.labels[k]!r} is linearly dependent on its "
                f"predecessors under the overlap metric (pivot {norm_sq:.3e})"
            )
        c[:, k] = v / np.sqrt(norm_sq)
    return OrbitalBasis(c)


def build_hamiltonian(spec: MoleculeSpec, basis: OrbitalBasis) -> FermionSum:
    """One-body Hamiltonian re-expressed in the orthonormal virtual basis."""
    if spec.one_body is None:
        raise ValueError(f"molecule {spec.name!r} has no one-body coefficients")
    h = spec.one_body.h
    c = basis.coeffs
    if h.shape[0] != c.shape[0]:
        raise ValueError(
            f"dimension mismatch: h is {h.shape[0]}x{h.shape[0]}, "
            f"basis is {c.shape[0]}x{c.shape[0]}"
        )
    rotated = c.T @ h @ c
    rotated = (rotated + rotated.conj().T) / 2  # kill round-off asymmetry
    return FermionSum.from_one_body(rotated)


def load_fixture(name: str) -> PauliSum:
    """Load one of the bundled reference Hamiltonians, digit for digit."""
    try:
        filename = _FIXTURE_FILES[name]
    except KeyError:
        raise ValueError(
            f"unknown fixture {name!r}; expected one of {', '.join(FIXTURE_NAMES)}"
        ) from None
    text = resources.files("molqpe.fixtures").joinpath(filename).read_text()
    return parse_pauli_text(text)


def fixture_text(name: str) -> str:
    """Raw text of a bundled reference Hamiltonian."""
    filename = _FIXTURE_FILES[name]
    return resources.files("molqpe.fixtures").joinpath(filename).read_text()
