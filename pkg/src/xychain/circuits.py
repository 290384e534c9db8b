"""Circuit container, network builders, execution, and JSON serialization.

The diagonalization circuit is assembled from four stages, applied in order:

1. an X layer translating between the spin convention (|0> = up = particle)
   and the occupation convention (|1> = occupied) used by the mode networks,
2. the recursive fermionic Fourier transform over fswap sorting networks,
3. a pairing network that parks each (k, -k) momentum pair on adjacent wires,
4. one Bogoliubov rotation per pair.

Builders only ever emit nearest-neighbour two-qubit gates; the kernel itself
accepts arbitrary target pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import gates, statevector, xymodel
from .exceptions import ResourceLimitError
from .gates import GateMatrix, GateOp

__all__ = [
    "Circuit",
    "circuit_from_json",
    "circuit_to_json",
    "dagger",
    "diagonalization_circuit",
    "eigenstate",
    "evolved_state",
    "fft_circuit",
    "fft_output_modes",
    "bogoliubov_layer",
    "bogoliubov_sort_network",
    "jw_layer",
    "ops_to_matrix",
    "parity_sort_network",
    "run",
    "stats",
    "time_evolution_circuit",
    "to_unitary",
    "wire_permutation",
]

UNITARY_MAX_QUBITS = 12


@dataclass
class Circuit:
    """An ordered gate list over ``n`` wires; treated as immutable once built."""

    n: int
    ops: tuple[GateOp, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"wire count must be at least 1, got {self.n}")
        self.ops = tuple(self.ops)
        for op in self.ops:
            if any(t < 0 or t >= self.n for t in op.targets):
                raise ValueError(
                    f"op {op.gate.name!r} targets {op.targets} out of range for n={self.n}"
                )


def run(circuit: Circuit, state: statevector.StateVector) -> statevector.StateVector:
    """Apply every gate of ``circuit`` in order and return the final state."""
    if state.n != circuit.n:
        raise ValueError(f"state has {state.n} qubits, circuit has {circuit.n}")
    out = state
    for op in circuit.ops:
        out = statevector.apply_gate(out, op.gate, op.targets)
    return out


def ops_to_matrix(ops, n: int) -> np.ndarray:
    """Dense unitary of a gate sequence on ``n`` qubits."""
    if n > UNITARY_MAX_QUBITS:
        raise ResourceLimitError(
            f"dense circuit unitaries support at most {UNITARY_MAX_QUBITS} qubits, got {n}"
        )
    mat = np.eye(2**n, dtype=complex)
    for op in ops:
        mat = statevector._apply_matrix(mat, n, op.gate.matrix, op.targets)
    return mat


def to_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary of the whole circuit."""
    return ops_to_matrix(circuit.ops, circuit.n)


def dagger(circuit: Circuit) -> Circuit:
    """Adjoint circuit: reversed gate order, each gate replaced by its adjoint."""
    ops = tuple(
        GateOp(gates.gate_dagger(op.gate), op.targets) for op in reversed(circuit.ops)
    )
    return Circuit(circuit.n, ops)


def _require_length(n: int, minimum: int) -> None:
    if n < minimum or n & (n - 1):
        raise ValueError(f"wire count must be a power of two >= {minimum}, got {n}")


def jw_layer(n: int) -> Circuit:
    """X on every wire: spin basis to occupation basis and back."""
    _require_length(n, 2)
    return Circuit(n, tuple(GateOp(gates.x(), (q,)) for q in range(n)))


def _parity_sort_ops(n: int, base: int) -> list[GateOp]:
    """Triangular fswap network moving even wires to the top half.

    Layer ``i`` (1-indexed) starts at wire ``i`` and places one gate fewer
    than the layer before it.
    """
    ops = []
    width = n // 2 - 1
    for layer in range(width):
        q = base + 1 + layer
        for _ in range(width - layer):
            ops.append(GateOp(gates.fswap(), (q, q + 1)))
            q += 2
    return ops


def parity_sort_network(n: int) -> Circuit:
    """Sort wire contents so even original positions precede odd ones."""
    _require_length(n, 2)
    return Circuit(n, tuple(_parity_sort_ops(n, 0)))


def _fft_ops(n: int, base: int) -> list[GateOp]:
    """Recursive mode transform emitting the interleaved output order.

    Output wire ``2i`` holds mode ``i`` and wire ``2i + 1`` holds mode
    ``i + n/2``.  Each half-size transform is linearized by an extra parity
    sort (empty for length 2) so the interleave step pairs like-index modes.
    """
    if n == 2:
        return [GateOp(gates.fourier_gate(2, 0), (base, base + 1))]
    half = n // 2
    ops = _parity_sort_ops(n, base)
    for offset in (base, base + half):
        ops.extend(_fft_ops(half, offset))
        ops.extend(_parity_sort_ops(half, offset))
    ops.extend(reversed(_parity_sort_ops(n, base)))
    for k in range(half):
        ops.append(GateOp(gates.fourier_gate(n, k), (base + 2 * k, base + 2 * k + 1)))
    return ops


def fft_circuit(n: int) -> Circuit:
    """Fermionic fast Fourier transform over nearest-neighbour gates."""
    _require_length(n, 2)
    return Circuit(n, tuple(_fft_ops(n, 0)))


def fft_output_modes(n: int) -> tuple[int, ...]:
    """Signed momentum label on each wire right after :func:`fft_circuit`."""
    _require_length(n, 4)
    modes = []
    for i in range(n // 2):
        partner = i + n // 2 if i == 0 else i - n // 2
        modes.extend((i, partner))
    return tuple(modes)


def bogoliubov_sort_network(n: int) -> Circuit:
    """Reorder the transform output into adjacent (k, -k) pairs.

    The negative labels sitting on odd wires come out of the transform in
    reversed order, so each cascade carries one down the chain and its
    partner back up.  Cascade ``c`` starts on wire ``c + 2`` once the
    previous cascade is four gates ahead, which keeps simultaneous fronts
    from colliding; emitted sequentially the same ordering is preserved by
    sorting on (time step, wire).
    """
    _require_length(n, 4)
    timed = []
    for c in range(1, n // 4):
        start = c + 2
        down = n - 4 * c
        t0 = 4 * (c - 1)
        for step in range(1, down + 1):
            timed.append((t0 + step, start + step - 1))
        front = start + down
        for step in range(1, down):
            timed.append((t0 + down + step, front - 1 - step))
    timed.sort()
    ops = tuple(GateOp(gates.fswap(), (w, w + 1)) for _, w in timed)
    return Circuit(n, ops)


def bogoliubov_layer(params: xymodel.ModelParams) -> Circuit:
    """One pairing rotation per adjacent (k, -k) pair, in mode-table order."""
    n = params.n
    ops = []
    for pair in range(n // 2):
        theta = xymodel.dispersion(params, pair).theta
        ops.append(GateOp(gates.bogoliubov_gate(theta), (2 * pair, 2 * pair + 1)))
    return Circuit(n, tuple(ops))


def diagonalization_circuit(params: xymodel.ModelParams) -> Circuit:
    """Circuit mapping Hamiltonian eigenstates to computational basis states.

    Its adjoint prepares the eigenstate labelled by a diagonal-basis
    bitstring (wire ``p`` = occupation of mode ``mode_table(n)[p]``).
    """
    n = params.n
    ops = list(jw_layer(n).ops)
    ops.extend(fft_circuit(n).ops)
    ops.extend(bogoliubov_sort_network(n).ops)
    ops.extend(bogoliubov_layer(params).ops)
    return Circuit(n, tuple(ops))


def time_evolution_circuit(params: xymodel.ModelParams, t: float) -> Circuit:
    """Diagonal-basis evolution for time ``t``: one phase gate per wire."""
    ops = []
    for pos, k in enumerate(xymodel.mode_table(params.n)):
        d = xymodel.dispersion(params, k)
        gate = gates.time_evolution_gate(d.e, d.eps, params.lam, t)
        ops.append(GateOp(gate, (pos,)))
    return Circuit(params.n, tuple(ops))


def eigenstate(params: xymodel.ModelParams, bits: str) -> statevector.StateVector:
    """Hamiltonian eigenstate carrying the occupation label ``bits``.

    The diagonalizing circuit maps eigenstates onto computational basis
    states, so the eigenstate is its adjoint applied to ``|bits>``.
    """
    circuit = dagger(diagonalization_circuit(params))
    return run(circuit, statevector.basis_state(bits))


def evolved_state(
    params: xymodel.ModelParams, bits: str, t: float
) -> statevector.StateVector:
    """``exp(-iHt)|bits>``: rotate to the eigenbasis, phase, rotate back."""
    dis = diagonalization_circuit(params)
    state = run(dis, statevector.basis_state(bits))
    state = run(time_evolution_circuit(params, t), state)
    return run(dagger(dis), state)


def wire_permutation(circuit: Circuit) -> tuple[int, ...]:
    """Track wire contents through an fswap-only circuit.

    Returns ``perm`` with ``perm[w]`` the input wire whose label ends up on
    wire ``w``.  Only defined for pure sorting networks.
    """
    labels = list(range(circuit.n))
    for op in circuit.ops:
        if op.gate.name != "fswap":
            raise ValueError(
                f"wire tracking is only defined for fswap networks, found {op.gate.name!r}"
            )
        a, b = op.targets
        labels[a], labels[b] = labels[b], labels[a]
    return tuple(labels)


def stats(circuit: Circuit) -> dict:
    """Gate counts and greedy-layered depth."""
    by_name: dict[str, int] = {}
    one_qubit = 0
    two_qubit = 0
    frontier = [0] * circuit.n
    depth = 0
    for op in circuit.ops:
        by_name[op.gate.name] = by_name.get(op.gate.name, 0) + 1
        if len(op.targets) == 1:
            one_qubit += 1
        else:
            two_qubit += 1
        layer = 1 + max(frontier[t] for t in op.targets)
        for t in op.targets:
            frontier[t] = layer
        depth = max(depth, layer)
    return {
        "total": len(circuit.ops),
        "one_qubit": one_qubit,
        "two_qubit": two_qubit,
        "depth": depth,
        "by_name": by_name,
    }


def circuit_to_json(circuit: Circuit) -> str:
    """Serialize to the interchange schema {"n": ..., "ops": [...]}."""
    doc = {
        "n": circuit.n,
        "ops": [
            {
                "name": op.gate.name,
                "params": [float(p) for p in op.gate.params],
                "targets": list(op.targets),
            }
            for op in circuit.ops
        ],
    }
    return json.dumps(doc, indent=2)


def circuit_from_json(text: str) -> Circuit:
    """Parse the interchange schema back into a circuit."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or "n" not in doc or "ops" not in doc:
        raise ValueError("circuit document must be an object with 'n' and 'ops'")
    ops = []
    for entry in doc["ops"]:
        gate = gates.from_name(entry["name"], entry.get("params", []))
        ops.append(GateOp(gate, tuple(entry["targets"])))
    return Circuit(int(doc["n"]), tuple(ops))
