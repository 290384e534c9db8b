"""Observable estimation: exact expectation values and shot-based estimators.

Exact values come straight from the statevector.  Shot estimators mimic a
measurement workflow: rotate into a product measurement basis, sample
bitstrings, and average eigenvalues.  Energy estimation partitions the
Hamiltonian into groups of qubit-wise commuting terms so that each group is
read out from a single measurement setting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import circuits, gates, statevector, xymodel
from .statevector import StateVector
from .xymodel import ModelParams, PauliString

__all__ = [
    "EstimateRecord",
    "MeasurementGroup",
    "energy_exact",
    "estimate_energy_diagonal",
    "estimate_energy_grouped",
    "estimate_mz_shots",
    "magnetization",
    "measurement_groups",
    "pauli_expectation",
]

_PAULI_MATRICES = {
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
}


@dataclass(frozen=True)
class EstimateRecord:
    """Result of one shot-based estimate."""

    mean: float
    std_error: float
    shots: int
    basis_groups: int


@dataclass(frozen=True)
class MeasurementGroup:
    """Qubit-wise commuting Hamiltonian terms sharing one measurement basis.

    ``basis`` assigns a single-qubit measurement axis (X, Y, or Z) to every
    wire; each term's letter on any wire is either I or the group's axis
    there, so all terms in the group are diagonal in the rotated
    computational basis.
    """

    basis: str
    terms: tuple[PauliString, ...]

    def __post_init__(self) -> None:
        if any(c not in "XYZ" for c in self.basis):
            raise ValueError(f"basis must be over XYZ, got {self.basis!r}")
        for term in self.terms:
            bad = [
                i
                for i, c in enumerate(term.letters)
                if c not in ("I", self.basis[i])
            ]
            if bad:
                raise ValueError(
                    f"term {term.letters} does not fit basis {self.basis} "
                    f"at wires {bad}"
                )


def pauli_expectation(state: StateVector, letters: str) -> float:
    """Expectation value of a unit-coefficient Pauli string."""
    if len(letters) != state.n:
        raise ValueError(
            f"expected {state.n} letters, got {len(letters)}"
        )
    transformed = state
    for wire, letter in enumerate(letters):
        if letter == "I":
            continue
        transformed = statevector.apply_gate(
            transformed, _PAULI_MATRICES[letter], (wire,)
        )
    value = statevector.inner_product(state, transformed)
    return float(value.real)


def magnetization(state: StateVector) -> float:
    """Average single-site Z expectation, ``(1/n) sum_i <Z_i>``."""
    probs = np.abs(state.amps) ** 2
    indices = np.arange(probs.size)
    total = 0.0
    for wire in range(state.n):
        bit = (indices >> (state.n - 1 - wire)) & 1
        total += float(np.sum(probs * (1 - 2 * bit)))
    return total / state.n


def energy_exact(state: StateVector, params: ModelParams) -> float:
    """Exact ``<psi|H|psi>`` as a sum over the Hamiltonian's Pauli terms."""
    if state.n != params.n:
        raise ValueError(f"state has {state.n} qubits, params expect {params.n}")
    return sum(
        term.coefficient * pauli_expectation(state, term.letters)
        for term in xymodel.hamiltonian_pauli_terms(params)
    )


def _classify(term: PauliString) -> str:
    """Sort one Hamiltonian term into its measurement family."""
    letters = term.letters
    distinct = set(letters) - {"I"}
    if distinct <= {"Z"}:
        return "field"
    interior = letters[1:-1]
    if letters[0] == letters[-1] and interior and set(interior) == {"Z"}:
        return "string-y" if letters[0] == "Y" else "string-x"
    if distinct == {"X"}:
        return "hop-x"
    if distinct == {"Y"}:
        return "hop-y"
    raise ValueError(f"unrecognized Hamiltonian term {letters!r}")


def measurement_groups(params: ModelParams) -> list[MeasurementGroup]:
    """Partition the Hamiltonian into qubit-wise commuting groups.

    The nearest-neighbour XX and YY couplings each share a uniform
    single-axis basis, the field terms share the computational basis, and
    each boundary string (Y..Z..Y or X..Z..X) needs its own mixed basis
    because its interior Z letters clash with the uniform coupling bases.
    Groups whose coefficients all vanish are dropped.
    """
    n = params.n
    bases = {
        "field": "Z" * n,
        "hop-x": "X" * n,
        "hop-y": "Y" * n,
        "string-y": "Y" + "Z" * (n - 2) + "Y",
        "string-x": "X" + "Z" * (n - 2) + "X",
    }
    buckets: dict[str, list[PauliString]] = {key: [] for key in bases}
    for term in xymodel.hamiltonian_pauli_terms(params):
        buckets[_classify(term)].append(term)
    return [
        MeasurementGroup(bases[key], tuple(terms))
        for key, terms in buckets.items()
        if terms
    ]


def _basis_rotation_ops(basis: str) -> list[gates.GateOp]:
    """Gate sequence mapping each wire's measurement axis onto Z."""
    ops: list[gates.GateOp] = []
    for wire, letter in enumerate(basis):
        if letter == "X":
            ops.append(gates.GateOp(gates.h(), (wire,)))
        elif letter == "Y":
            ops.append(gates.GateOp(gates.phase(-math.pi / 2), (wire,)))
            ops.append(gates.GateOp(gates.h(), (wire,)))
    return ops


def _counts_mean_and_error(
    values: np.ndarray, counts: np.ndarray, shots: int
) -> tuple[float, float]:
    """Sample mean and standard error from tallied per-shot values."""
    mean = float(np.dot(counts, values)) / shots
    variance = float(np.dot(counts, (values - mean) ** 2)) / (shots - 1)
    return mean, math.sqrt(variance / shots)


def _sample_group_value(
    state: StateVector,
    basis: str,
    terms: tuple[PauliString, ...],
    shots: int,
    seed: int,
) -> tuple[float, float]:
    """Measure one group: rotate, sample, average term eigenvalues."""
    rotated = state
    for op in _basis_rotation_ops(basis):
        rotated = statevector.apply_gate(rotated, op.gate, op.targets)
    tally = statevector.sample_counts(rotated, shots, seed)
    values = []
    counts = []
    for bits, count in tally.counts.items():
        signs = [1 - 2 * int(bits[i]) for i in range(len(bits))]
        value = sum(
            term.coefficient * math.prod(signs[i] for i in term.support)
            for term in terms
        )
        values.append(value)
        counts.append(count)
    return _counts_mean_and_error(
        np.asarray(values, dtype=float), np.asarray(counts, dtype=float), shots
    )


def _require_shots(shots: int) -> None:
    if shots < 2:
        raise ValueError(f"need at least 2 shots for an error bar, got {shots}")


def estimate_energy_grouped(
    params: ModelParams, state: StateVector, shots: int, seed: int
) -> EstimateRecord:
    """Estimate ``<H>`` by measuring each qubit-wise commuting group.

    Every group receives ``shots`` samples in its own basis (seeded
    ``seed``, ``seed + 1``, ...); the total mean is the sum of group means
    and the squared standard errors add.
    """
    _require_shots(shots)
    groups = measurement_groups(params)
    mean = 0.0
    variance = 0.0
    for index, group in enumerate(groups):
        group_mean, group_error = _sample_group_value(
            state, group.basis, group.terms, shots, seed + index
        )
        mean += group_mean
        variance += group_error**2
    return EstimateRecord(mean, math.sqrt(variance), shots, len(groups))


def estimate_energy_diagonal(
    params: ModelParams, state: StateVector, shots: int, seed: int
) -> EstimateRecord:
    """Estimate ``<H>`` by measuring in the Hamiltonian's eigenbasis.

    The diagonalizing circuit rotates the state so that every computational
    outcome is an occupation label whose exact eigenvalue is known; a single
    measurement setting then suffices, and eigenstates give zero variance.
    """
    _require_shots(shots)
    rotated = circuits.run(circuits.diagonalization_circuit(params), state)
    tally = statevector.sample_counts(rotated, shots, seed)
    values = np.asarray(
        [xymodel.eigen_energy(bits, params) for bits in tally.counts], dtype=float
    )
    counts = np.asarray(list(tally.counts.values()), dtype=float)
    mean, error = _counts_mean_and_error(values, counts, shots)
    return EstimateRecord(mean, error, shots, 1)


def estimate_mz_shots(state: StateVector, shots: int, seed: int) -> EstimateRecord:
    """Estimate the average magnetization from computational-basis shots."""
    _require_shots(shots)
    tally = statevector.sample_counts(state, shots, seed)
    values = np.asarray(
        [
            sum(1 - 2 * int(b) for b in bits) / state.n
            for bits in tally.counts
        ],
        dtype=float,
    )
    counts = np.asarray(list(tally.counts.values()), dtype=float)
    mean, error = _counts_mean_and_error(values, counts, shots)
    return EstimateRecord(mean, error, shots, 1)
