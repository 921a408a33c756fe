"""Exact algebra of n-qubit Pauli strings and their sparse linear combinations.

Qubit ordering convention, used consistently everywhere (including the
dense realization): the leftmost character of a string label acts on the
highest qubit index and occupies the leftmost tensor factor.  For a label
``s`` of length ``n``, ``s[i]`` acts on qubit ``n - 1 - i``, and qubit ``j``
corresponds to bit ``j`` of a computational-basis index.  So ``"XY"`` means
X on qubit 1 tensored with Y on qubit 0, and ``to_dense`` returns
``kron(X, Y)``.

Coefficients are complex doubles.  Every operation simplifies its result:
terms whose coefficient magnitude falls below ``TOLERANCE`` are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

#: Coefficients with magnitude below this are discarded on simplification.
TOLERANCE = 1e-12

#: Largest qubit count for which a dense 2^n x 2^n realization is allowed.
DENSE_QUBIT_LIMIT = 12

PAULI_CHARS = "IXYZ"

SINGLE_QUBIT_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# a * b = phase * c for single-qubit Paulis.
_MUL_TABLE = {
    ("I", "I"): (1, "I"),
    ("I", "X"): (1, "X"),
    ("I", "Y"): (1, "Y"),
    ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"),
    ("Y", "I"): (1, "Y"),
    ("Z", "I"): (1, "Z"),
    ("X", "X"): (1, "I"),
    ("Y", "Y"): (1, "I"),
    ("Z", "Z"): (1, "I"),
    ("X", "Y"): (1j, "Z"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("X", "Z"): (-1j, "Y"),
}

_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)


class PauliTextError(ValueError):
    """Malformed Pauli-sum text; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis, e.g. ``PauliString("IXZ")``."""

    ops: str

    def __post_init__(self):
        bad = set(self.ops) - set(PAULI_CHARS)
        if bad:
            raise ValueError(f"invalid Pauli character {sorted(bad)[0]!r} in {self.ops!r}")

    @property
    def n(self) -> int:
        return len(self.ops)

    def __str__(self) -> str:
        return self.ops


@dataclass(frozen=True)
class PhasedPauli:
    """A Pauli string with a tracked fourth-root-of-unity prefactor."""

    string: PauliString
    phase: complex = 1 + 0j

    def __post_init__(self):
        if self.phase not in _PHASES:
            raise ValueError(f"phase must be one of {{1, i, -1, -i}}, got {self.phase!r}")


def mul_single(a: str, b: str) -> tuple[complex, str]:
    """Multiply two single-qubit Paulis, returning ``(phase, product)``."""
    try:
        return _MUL_TABLE[(a, b)]
    except KeyError:
        raise ValueError(f"not single-qubit Paulis: {a!r}, {b!r}") from None


def mul_strings(p: PhasedPauli, q: PhasedPauli) -> PhasedPauli:
    """Qubit-wise product of two phased Pauli strings."""
    if p.string.n != q.string.n:
        raise ValueError(f"qubit count mismatch: {p.string.n} vs {q.string.n}")
    phase, label = _mul_labels(p.string.ops, q.string.ops)
    return PhasedPauli(PauliString(label), phase * p.phase * q.phase)


def _mul_labels(a: str, b: str) -> tuple[complex, str]:
    phase = 1 + 0j
    out = []
    for ca, cb in zip(a, b):
        ph, c = _MUL_TABLE[(ca, cb)]
        phase *= ph
        out.append(c)
    return phase, "".join(out)


TermsLike = Union[Mapping, Iterable[tuple], None]


class PauliSum:
    """Sparse linear combination of equal-length Pauli strings.

    Immutable after construction; all arithmetic returns new sums.  Keys may
    be given as ``PauliString`` or plain labels; construction merges
    duplicates and drops terms below ``TOLERANCE``.
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: TermsLike = None):
        if n <= 0:
            raise ValueError(f"qubit count must be positive, got {n}")
        merged: dict[PauliString, complex] = {}
        if terms is not None:
            pairs = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in pairs:
                string = key if isinstance(key, PauliString) else PauliString(key)
                if string.n != n:
                    raise ValueError(
                        f"term {string.ops!r} has {string.n} qubits, expected {n}"
                    )
                merged[string] = merged.get(string, 0j) + complex(coeff)
        self._n = n
        self._terms = {s: c for s, c in merged.items() if abs(c) >= TOLERANCE}

    @classmethod
    def identity(cls, n: int, coeff: complex = 1.0) -> "PauliSum":
        return cls(n, {"I" * n: coeff})

    @classmethod
    def zero(cls, n: int) -> "PauliSum":
        return cls(n)

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[PauliString, complex]:
        return MappingProxyType(self._terms)

    def coeff(self, key: str | PauliString) -> complex:
        string = key if isinstance(key, PauliString) else PauliString(key)
        return self._terms.get(string, 0j)

    def labels(self) -> list[str]:
        return [s.ops for s in self._terms]

    def one_norm(self) -> float:
        """Sum of coefficient magnitudes."""
        return float(sum(abs(c) for c in self._terms.values()))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[PauliString, complex]]:
        return iter(self._terms.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PauliSum)
            and self._n == other._n
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self._n, frozenset(self._terms.items())))

    def __add__(self, other: "PauliSum") -> "PauliSum":
        return sum_add(self, other)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return sum_add(self, -other)

    def __neg__(self) -> "PauliSum":
        return self.scaled(-1.0)

    def __mul__(self, other) -> "PauliSum":
        if isinstance(other, PauliSum):
            return sum_mul(self, other)
        return self.scaled(other)

    def __rmul__(self, scalar) -> "PauliSum":
        return self.scaled(scalar)

    def scaled(self, scalar: complex) -> "PauliSum":
        return PauliSum(self._n, {s: scalar * c for s, c in self._terms.items()})

    def __repr__(self) -> str:
        body = ", ".join(
            f"{c.real if c.imag == 0 else c:.6g}*{s.ops}" for s, c in self._terms.items()
        )
        return f"PauliSum({self._n}, [{body}])"


def sum_add(a: PauliSum, b: PauliSum) -> PauliSum:
    """Coefficient-wise merge of two sums on the same qubit count."""
    if a.n != b.n:
        raise ValueError(f"qubit count mismatch: {a.n} vs {b.n}")
    merged = dict(a.terms)
    for s, c in b:
        merged[s] = merged.get(s, 0j) + c
    return PauliSum(a.n, merged)


def sum_mul(a: PauliSum, b: PauliSum) -> PauliSum:
    """Operator product, distributing the string product over all term pairs."""
    if a.n != b.n:
        raise ValueError(f"qubit count mismatch: {a.n} vs {b.n}")
    acc: dict[str, complex] = {}
    for sa, ca in a:
        for sb, cb in b:
            phase, label = _mul_labels(sa.ops, sb.ops)
            acc[label] = acc.get(label, 0j) + ca * cb * phase
    return PauliSum(a.n, acc)


def to_dense(a: PauliSum) -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix of the sum (leftmost label char = leftmost factor)."""
    if a.n > DENSE_QUBIT_LIMIT:
        raise ValueError(f"{a.n} qubits exceeds dense limit of {DENSE_QUBIT_LIMIT}")
    dim = 2**a.n
    out = np.zeros((dim, dim), dtype=complex)
    for s, c in a:
        m = np.array([[1.0 + 0j]])
        for ch in s.ops:
            m = np.kron(m, SINGLE_QUBIT_MATRICES[ch])
        out += c * m
    return out


def string_to_dense(s: PauliString | str) -> np.ndarray:
    ops = s.ops if isinstance(s, PauliString) else s
    m = np.array([[1.0 + 0j]])
    for ch in ops:
        m = np.kron(m, SINGLE_QUBIT_MATRICES[ch])
    return m


def is_hermitian_as_sum(a: PauliSum) -> bool:
    """True iff every coefficient is real to within ``TOLERANCE``.

    Pauli strings are individually Hermitian, so after simplification this
    is equivalent to Hermiticity of the represented operator.
    """
    return all(abs(c.imag) < TOLERANCE for _, c in a)


# --- text format -----------------------------------------------------------
#
# One term per line: "<coefficient> <label>".  The coefficient is a decimal
# real, or "a+bi" / "a-bi" for complex values.  Lines starting with '#' and
# blank lines are ignored.  Formatting uses the shortest representation that
# round-trips a double, so parse -> format is byte-stable.


def parse_pauli_text(text: str) -> PauliSum:
    """Parse the one-term-per-line text format into a ``PauliSum``."""
    pairs: list[tuple[str, complex]] = []
    n: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise PauliTextError(
                f"expected '<coefficient> <string>', got {line!r}", lineno
            )
        coeff = _parse_coeff(fields[0], lineno)
        label = fields[1]
        bad = set(label) - set(PAULI_CHARS)
        if bad:
            raise PauliTextError(
                f"invalid Pauli character {sorted(bad)[0]!r} in {label!r}", lineno
            )
        if n is None:
            n = len(label)
        elif len(label) != n:
            raise PauliTextError(
                f"string {label!r} has length {len(label)}, expected {n}", lineno
            )
        pairs.append((label, coeff))
    if n is None:
        raise PauliTextError("no terms: qubit count cannot be determined")
    return PauliSum(n, pairs)


def format_pauli_text(a: PauliSum) -> str:
    """Format a sum in the text format, one term per line, insertion order."""
    lines = [f"{format_coeff(c)} {s.ops}" for s, c in a]
    return "\n".join(lines) + "\n"


def format_coeff(c: complex) -> str:
    if c.imag == 0.0:
        return repr(c.real)
    sign = "+" if c.imag >= 0 else "-"
    return f"{c.real!r}{sign}{abs(c.imag)!r}i"


def _parse_coeff(token: str, lineno: int) -> complex:
    text = token[:-1] + "j" if token.endswith(("i", "j")) else token
    try:
        return complex(text)
    except ValueError:
        raise PauliTextError(f"bad coefficient {token!r}", lineno) from None
