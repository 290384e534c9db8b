"""Dense statevector kernel: state creation, gate application, Born sampling.

Qubit 0 is the top wire and maps to the most significant bit of the
amplitude index, so the amplitude of ``|b_0 b_1 ... b_{n-1}>`` sits at
index ``sum_p b_p * 2**(n - 1 - p)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ShotCounts",
    "StateVector",
    "apply_gate",
    "basis_state",
    "inner_product",
    "sample_counts",
    "zero_state",
]

UNITARY_ATOL = 1e-12
_NORM_ATOL = 1e-9


@dataclass
class StateVector:
    """Amplitudes of an ``n``-qubit pure state."""

    n: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"qubit count must be at least 1, got {self.n}")
        self.amps = np.asarray(self.amps, dtype=np.complex128)
        if self.amps.shape != (2**self.n,):
            raise ValueError(
                f"expected {2**self.n} amplitudes for n={self.n}, "
                f"got shape {self.amps.shape}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> StateVector:
        return StateVector(self.n, self.amps.copy())


@dataclass
class ShotCounts:
    """Projective-measurement tallies mapping bitstring to occurrences."""

    counts: dict[str, int]
    shots: int
    seed: int


def zero_state(n: int) -> StateVector:
    """Return ``|00...0>`` on ``n`` qubits."""
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def basis_state(bits: str) -> StateVector:
    """Return the computational basis state labelled by ``bits``.

    Args:
        bits: string of ``0``/``1`` characters, qubit 0 first.
    """
    if not bits or any(c not in "01" for c in bits):
        raise ValueError(f"bitstring must be nonempty over {{0,1}}, got {bits!r}")
    n = len(bits)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return StateVector(n, amps)


def _apply_matrix(
    amps: np.ndarray, n: int, matrix: np.ndarray, targets: tuple[int, ...]
) -> np.ndarray:
    """Apply ``matrix`` to the given qubit axes of ``amps``.

    ``amps`` may carry a trailing batch axis (shape ``(2**n, m)``), which is
    how whole unitaries are pushed through a circuit column by column.
    """
    k = len(targets)
    tail = amps.shape[1:]
    tensor = amps.reshape((2,) * n + tail)
    gate_tensor = matrix.reshape((2,) * (2 * k))
    moved = np.tensordot(gate_tensor, tensor, axes=(list(range(k, 2 * k)), list(targets)))
    moved = np.moveaxis(moved, list(range(k)), list(targets))
    return np.ascontiguousarray(moved).reshape(amps.shape)


def apply_gate(state: StateVector, gate, targets) -> StateVector:
    """Apply a one- or two-qubit unitary to ``state`` and return the result.

    Args:
        state: input state; it is not modified.
        gate: a ``GateMatrix`` or a raw ``(2**k, 2**k)`` ndarray.
        targets: qubit indices the gate acts on; ``targets[0]`` binds to the
            most significant index of the gate matrix.
    """
    matrix = np.asarray(getattr(gate, "matrix", gate), dtype=np.complex128)
    targets = tuple(int(t) for t in targets)
    k = len(targets)
    if k not in (1, 2):
        raise ValueError(f"gates must act on 1 or 2 qubits, got {k} targets")
    if len(set(targets)) != k:
        raise ValueError(f"duplicate target qubits in {targets}")
    if any(t < 0 or t >= state.n for t in targets):
        raise ValueError(f"targets {targets} out of range for n={state.n}")
    if matrix.shape != (2**k, 2**k):
        raise ValueError(
            f"gate on {k} qubits must be {2**k}x{2**k}, got shape {matrix.shape}"
        )
    deviation = np.abs(matrix.conj().T @ matrix - np.eye(2**k)).max()
    if deviation > UNITARY_ATOL:
        raise ValueError(f"gate is not unitary (deviation {deviation:.3e})")
    return StateVector(state.n, _apply_matrix(state.amps, state.n, matrix, targets))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """Return ``<a|b>``."""
    if a.n != b.n:
        raise ValueError(f"states act on different registers: {a.n} vs {b.n}")
    return complex(np.vdot(a.amps, b.amps))


def sample_counts(state: StateVector, shots: int, seed: int) -> ShotCounts:
    """Draw ``shots`` computational-basis samples from the Born distribution.

    Sampling is deterministic for a fixed seed.
    """
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    probs = np.abs(state.amps) ** 2
    total = float(probs.sum())
    if abs(total - 1.0) > _NORM_ATOL:
        raise ValueError(f"state is not normalized (total probability {total!r})")
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, probs / total)
    counts = {
        format(i, f"0{state.n}b"): int(c) for i, c in enumerate(draws) if c
    }
    return ShotCounts(counts=counts, shots=shots, seed=seed)
