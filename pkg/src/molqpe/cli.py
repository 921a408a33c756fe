"""Command-line pipeline: Hamiltonian -> truncated evolution -> phase estimation.

Configuration comes from an optional flat ``key = value`` file plus flags
(flags win).  Recognized keys::

    molecule         one of H2-nospin, H2-spin, He2-nospin, custom
    hamiltonian_file path to a Pauli-sum text file (alternative source)
    h_matrix         path to a one-body coefficient matrix (rows of decimals);
                     switches the named molecule to the constructive path
    S, S1, S2        overlap parameters for the named patterns
    order            Taylor truncation order (default per molecule)
    segments         evolution segments (default: smallest count keeping the
                     per-segment series argument <= 1)
    time             evolution time (default 1.0)
    registers        phase-estimation register dimension N (default 100)
    initial_state    uniform | eigenstate:<i> | basis:<i> | file:<path>
    out              output CSV path (required)
    metadata_out     metadata sidecar path (default: <out>.meta)

Exactly one Hamiltonian source must be given: ``molecule`` (bundled
reference data, or the constructive path when ``h_matrix`` is present) or
``hamiltonian_file``.

Outputs: a CSV ``K,phase,probability`` with one row per register value
(phase = 2 pi K / N, 17 significant digits), and a key-value metadata
sidecar recording the run parameters, truncation error, postselection
success probability, and dense eigenvalues.  Output is byte-identical for
identical configuration.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .chem import FIXTURE_NAMES, MoleculeSpec, OneBodyHamiltonian, build_overlap, \
    build_hamiltonian, gram_schmidt, load_fixture
from .fermion import jw_transform
from .lcu import LcuConfig, build_taylor, default_segments
from .pauli import PauliSum, PauliTextError, parse_pauli_text, to_dense
from .pea import PeaConfig, PhaseDistribution, run_pea
from .statevec import EvolutionOperator, StateVector, eig_hermitian

DEFAULT_ORDERS = {"H2-nospin": 2, "H2-spin": 2, "He2-nospin": 1, "custom": 2}
DEFAULT_REGISTERS = 100

_CONFIG_KEYS = (
    "molecule",
    "hamiltonian_file",
    "h_matrix",
    "S",
    "S1",
    "S2",
    "order",
    "segments",
    "time",
    "registers",
    "initial_state",
    "out",
    "metadata_out",
)


class ConfigError(ValueError):
    """Invalid configuration; ``key`` names the offending entry."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(message)


@dataclass
class RunConfig:
    molecule: str | None = None
    hamiltonian_file: str | None = None
    h_matrix: str | None = None
    s: float = 0.0
    s1: float = 0.0
    s2: float = 0.0
    order: int | None = None
    segments: int | None = None
    time: float = 1.0
    registers: int = DEFAULT_REGISTERS
    initial_state: str = "uniform"
    out: str | None = None
    metadata_out: str | None = None

    def validate(self) -> None:
        if (self.molecule is None) == (self.hamiltonian_file is None):
            key = "molecule"
            raise ConfigError(
                key, "exactly one Hamiltonian source required: molecule or hamiltonian_file"
            )
        if self.h_matrix is not None and self.molecule is None:
            raise ConfigError("h_matrix", "h_matrix requires a molecule pattern name")
        if self.molecule is not None and self.molecule not in DEFAULT_ORDERS:
            raise ConfigError(
                "molecule",
                f"unknown molecule {self.molecule!r}; expected one of "
                f"{', '.join(FIXTURE_NAMES)} or custom",
            )
        if self.molecule == "custom" and self.h_matrix is None:
            raise ConfigError("molecule", "custom molecule requires h_matrix")
        if self.order is not None and self.order < 0:
            raise ConfigError("order", f"order must be >= 0, got {self.order}")
        if self.segments is not None and self.segments < 1:
            raise ConfigError("segments", f"segments must be >= 1, got {self.segments}")
        if self.time == 0 or not np.isfinite(self.time):
            raise ConfigError("time", f"time must be finite and nonzero, got {self.time}")
        if self.registers < 2:
            raise ConfigError("registers", f"registers must be >= 2, got {self.registers}")
        if self.out is None:
            raise ConfigError("out", "an output CSV path is required")
        for param, key in ((self.s, "S"), (self.s1, "S1"), (self.s2, "S2")):
            if abs(param) >= 1.0:
                raise ConfigError(key, f"overlap parameter must lie in (-1, 1), got {param}")


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Read a flat ``key = value`` file; unknown keys are rejected."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError("config", f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(key, f"line {lineno}: unknown configuration key {key!r}")
        values[key] = value.strip()
    return values


def parse_hamiltonian_file(path: str | Path) -> PauliSum:
    """Parse a Pauli-sum text file, reporting the file in any error."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("hamiltonian_file", f"cannot read {path}: {exc}") from exc
    try:
        return parse_pauli_text(text)
    except PauliTextError as exc:
        raise ConfigError("hamiltonian_file", f"{path}: {exc}") from exc


def _load_h_matrix(path: str) -> OneBodyHamiltonian:
    try:
        matrix = np.loadtxt(path, ndmin=2)
    except OSError as exc:
        raise ConfigError("h_matrix", f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError("h_matrix", f"{path}: {exc}") from exc
    try:
        return OneBodyHamiltonian(matrix)
    except ValueError as exc:
        raise ConfigError("h_matrix", str(exc)) from exc


def resolve_hamiltonian(cfg: RunConfig) -> tuple[PauliSum, str]:
    """Produce the qubit Hamiltonian and a short description of its source."""
    if cfg.hamiltonian_file is not None:
        return parse_hamiltonian_file(cfg.hamiltonian_file), cfg.hamiltonian_file
    if cfg.h_matrix is None:
        return load_fixture(cfg.molecule), cfg.molecule
    spec = MoleculeSpec(
        cfg.molecule, s=cfg.s, s1=cfg.s1, s2=cfg.s2, one_body=_load_h_matrix(cfg.h_matrix)
    )
    try:
        overlap = build_overlap(spec)
        basis = gram_schmidt(overlap)
        fermionic = build_hamiltonian(spec, basis)
    except ValueError as exc:
        raise ConfigError("h_matrix", str(exc)) from exc
    return jw_transform(fermionic), f"{cfg.molecule}+{cfg.h_matrix}"


def _parse_amplitude(token: str) -> complex:
    text = token[:-1] + "j" if token.endswith(("i", "j")) else token
    return complex(text)


def resolve_initial_state(
    descriptor: str, hamiltonian_dense: np.ndarray
) -> StateVector:
    """Build the system state named by an initial-state descriptor."""
    dim = hamiltonian_dense.shape[0]
    n_qubits = dim.bit_length() - 1
    if descriptor == "uniform":
        return StateVector.uniform(n_qubits)
    kind, _, arg = descriptor.partition(":")
    if kind == "eigenstate":
        index = _descriptor_index(arg, dim)
        _, vectors = eig_hermitian(hamiltonian_dense)
        return StateVector(vectors[:, index])
    if kind == "basis":
        index = _descriptor_index(arg, dim)
        return StateVector.basis_state(n_qubits, index)
    if kind == "file":
        try:
            tokens = [
                line.strip() for line in Path(arg).read_text().splitlines() if line.strip()
            ]
            amplitudes = [_parse_amplitude(tok) for tok in tokens]
        except (OSError, ValueError) as exc:
            raise ConfigError("initial_state", f"cannot load state from {arg}: {exc}") from exc
        if len(amplitudes) != dim:
            raise ConfigError(
                "initial_state",
                f"state file {arg} has {len(amplitudes)} amplitudes, expected {dim}",
            )
        return StateVector(np.array(amplitudes)).normalized()
    raise ConfigError(
        "initial_state",
        f"unknown descriptor {descriptor!r}; expected uniform, "
        "eigenstate:<i>, basis:<i>, or file:<path>",
    )


def _descriptor_index(arg: str, dim: int) -> int:
    try:
        index = int(arg)
    except ValueError:
        raise ConfigError("initial_state", f"expected an integer index, got {arg!r}") from None
    if not 0 <= index < dim:
        raise ConfigError("initial_state", f"index {index} out of range for dimension {dim}")
    return index


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def run_pipeline(cfg: RunConfig) -> tuple[PhaseDistribution, dict[str, str]]:
    """Run the full pipeline and write the CSV and metadata artifacts."""
    cfg.validate()
    hamiltonian, source = resolve_hamiltonian(cfg)

    if cfg.order is not None:
        order = cfg.order
    elif cfg.molecule is not None:
        order = DEFAULT_ORDERS[cfg.molecule]
    else:
        order = 2
    segments = (
        cfg.segments
        if cfg.segments is not None
        else default_segments(hamiltonian, cfg.time)
    )
    lcu_config = LcuConfig(order=order, segments=segments, time=cfg.time)

    dense = to_dense(hamiltonian)
    eigenvalues, _ = eig_hermitian(dense)
    taylor = build_taylor(hamiltonian, lcu_config)
    evolution = EvolutionOperator(taylor.full_dense())
    exact = _dense_exponential(dense, cfg.time)
    truncation = float(np.linalg.norm(evolution.matrix - exact, 2))

    state = resolve_initial_state(cfg.initial_state, dense)
    pea_config = PeaConfig(cfg.registers, cfg.time, cfg.initial_state)
    distribution = run_pea(evolution, pea_config, state)

    metadata = {
        "molecule": source,
        "qubits": str(hamiltonian.n),
        "terms": str(len(hamiltonian)),
        "order": str(order),
        "segments": str(segments),
        "time": _fmt(cfg.time),
        "registers": str(cfg.registers),
        "initial_state": cfg.initial_state,
        "truncation_error": _fmt(truncation),
        "success_probability": _fmt(distribution.metadata["success_probability"]),
        "eigenvalues": ",".join(_fmt(w) for w in eigenvalues),
        "version": __version__,
    }
    if "warnings" in distribution.metadata:
        metadata["warnings"] = distribution.metadata["warnings"]

    out = Path(cfg.out)
    metadata_out = Path(cfg.metadata_out) if cfg.metadata_out else Path(str(out) + ".meta")
    write_distribution_csv(distribution, out)
    write_metadata(metadata, metadata_out)
    return distribution, metadata


def _dense_exponential(hermitian: np.ndarray, t: float) -> np.ndarray:
    w, v = eig_hermitian(hermitian)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def write_distribution_csv(dist: PhaseDistribution, path: Path) -> None:
    lines = ["K,phase,probability"]
    phases = dist.phases
    for k in range(dist.register_dim):
        lines.append(f"{k},{_fmt(phases[k])},{_fmt(dist.probabilities[k])}")
    path.write_text("\n".join(lines) + "\n", newline="\n")


def write_metadata(metadata: dict[str, str], path: Path) -> None:
    lines = [f"{key} = {value}" for key, value in metadata.items()]
    path.write_text("\n".join(lines) + "\n", newline="\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="molqpe",
        description="Molecular Hamiltonian evolution and N-point phase estimation.",
    )
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--molecule", help="named molecule (bundled Hamiltonian)")
    parser.add_argument("--hamiltonian-file", help="Pauli-sum text file")
    parser.add_argument("--order", type=int, help="Taylor truncation order")
    parser.add_argument("--segments", type=int, help="number of evolution segments")
    parser.add_argument("--time", type=float, help="evolution time (default 1.0)")
    parser.add_argument("--registers", type=int, help="register dimension N (default 100)")
    parser.add_argument("--initial-state", help="uniform | eigenstate:<i> | basis:<i> | file:<path>")
    parser.add_argument("--out", help="output CSV path")
    parser.add_argument("--metadata-out", help="metadata sidecar path (default <out>.meta)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


_TYPED_KEYS = {
    "order": ("order", int),
    "segments": ("segments", int),
    "time": ("time", float),
    "registers": ("registers", int),
    "S": ("s", float),
    "S1": ("s1", float),
    "S2": ("s2", float),
}
_STRING_KEYS = {
    "molecule": "molecule",
    "hamiltonian_file": "hamiltonian_file",
    "h_matrix": "h_matrix",
    "initial_state": "initial_state",
    "out": "out",
    "metadata_out": "metadata_out",
}


def build_run_config(
    file_values: dict[str, str], flag_values: dict[str, object]
) -> RunConfig:
    """Merge config-file values with flag overrides into a ``RunConfig``."""
    cfg = RunConfig()
    for key, raw in file_values.items():
        if key in _TYPED_KEYS:
            attr, cast = _TYPED_KEYS[key]
            try:
                setattr(cfg, attr, cast(raw))
            except ValueError:
                raise ConfigError(key, f"expected {cast.__name__}, got {raw!r}") from None
        else:
            setattr(cfg, _STRING_KEYS[key], raw)
    for attr, value in flag_values.items():
        if value is not None:
            setattr(cfg, attr, value)
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        file_values = parse_config_file(args.config) if args.config else {}
        flag_values = {
            "molecule": args.molecule,
            "hamiltonian_file": args.hamiltonian_file,
            "order": args.order,
            "segments": args.segments,
            "time": args.time,
            "registers": args.registers,
            "initial_state": args.initial_state,
            "out": args.out,
            "metadata_out": args.metadata_out,
        }
        cfg = build_run_config(file_values, flag_values)
        run_pipeline(cfg)
    except ConfigError as exc:
        print(f"error: {exc.key}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
