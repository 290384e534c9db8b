"""Gate matrices for the free-fermion compiler and their basic-gate decompositions.

Two-qubit matrices are indexed big-endian: the first target qubit is the most
significant bit of the row/column index.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import UnsupportedGateError

__all__ = [
    "GateMatrix",
    "GateOp",
    "bogoliubov_gate",
    "ch",
    "cnot",
    "crx",
    "cz",
    "decompose",
    "fourier_gate",
    "from_name",
    "fswap",
    "gate_dagger",
    "h",
    "phase",
    "swap",
    "time_evolution_gate",
    "x",
]

_SQ2 = 1.0 / math.sqrt(2.0)
_UNITARY_ATOL = 1e-12


@dataclass
class GateMatrix:
    """A named unitary with the parameters needed to rebuild it."""

    name: str
    params: tuple[float, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=np.complex128)
        dim = self.matrix.shape[0]
        if self.matrix.shape != (dim, dim) or dim not in (2, 4):
            raise ValueError(f"gate matrix must be 2x2 or 4x4, got {self.matrix.shape}")
        deviation = np.abs(self.matrix.conj().T @ self.matrix - np.eye(dim)).max()
        if deviation > _UNITARY_ATOL:
            raise ValueError(
                f"gate {self.name!r} is not unitary (deviation {deviation:.3e})"
            )

    @property
    def num_qubits(self) -> int:
        return 1 if self.matrix.shape[0] == 2 else 2


@dataclass
class GateOp:
    """A gate bound to the qubits it acts on."""

    gate: GateMatrix
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        self.targets = tuple(int(t) for t in self.targets)
        if len(self.targets) != self.gate.num_qubits:
            raise ValueError(
                f"gate {self.gate.name!r} acts on {self.gate.num_qubits} qubits, "
                f"got targets {self.targets}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"duplicate targets in {self.targets}")


def x() -> GateMatrix:
    return GateMatrix("x", (), np.array([[0, 1], [1, 0]], dtype=complex))


def h() -> GateMatrix:
    return GateMatrix("h", (), np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex))


def phase(phi: float) -> GateMatrix:
    """diag(1, e^{i phi})."""
    if not math.isfinite(phi):
        raise ValueError(f"phase angle must be finite, got {phi!r}")
    return GateMatrix("phase", (phi,), np.diag([1.0, cmath.exp(1j * phi)]))


def cz() -> GateMatrix:
    return GateMatrix("cz", (), np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex))


def cnot() -> GateMatrix:
    m = np.eye(4, dtype=complex)
    m[[2, 3]] = m[[3, 2]]
    return GateMatrix("cnot", (), m)


def swap() -> GateMatrix:
    m = np.eye(4, dtype=complex)
    m[[1, 2]] = m[[2, 1]]
    return GateMatrix("swap", (), m)


def ch() -> GateMatrix:
    """Hadamard on the second qubit, controlled on the first."""
    m = np.eye(4, dtype=complex)
    m[2:, 2:] = h().matrix
    return GateMatrix("ch", (), m)


def crx(theta: float) -> GateMatrix:
    """X-rotation by ``theta`` on the second qubit, controlled on the first."""
    if not math.isfinite(theta):
        raise ValueError(f"rotation angle must be finite, got {theta!r}")
    c = math.cos(theta / 2.0)
    s = -1j * math.sin(theta / 2.0)
    m = np.eye(4, dtype=complex)
    m[2:, 2:] = np.array([[c, s], [s, c]])
    return GateMatrix("crx", (theta,), m)


def fswap() -> GateMatrix:
    """Swap two fermionic modes: a SWAP that also flips the sign of |11>."""
    return GateMatrix(
        "fswap",
        (),
        np.array(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]], dtype=complex
        ),
    )


def fourier_gate(n: int, k: int) -> GateMatrix:
    """Two-mode Fourier butterfly mixing an even-sector with an odd-sector mode.

    Acting on the pair (even-subchain mode k, odd-subchain mode k) of an
    ``n``-site chain, it outputs the chain modes (k, k + n/2).  The |11> input
    picks up the fermionic exchange phase.
    """
    if n < 2 or n & (n - 1):
        raise ValueError(f"chain length must be a power of two >= 2, got {n}")
    if not 0 <= k < n // 2:
        raise ValueError(f"mode index must satisfy 0 <= k < {n // 2}, got {k}")
    w = cmath.exp(-2j * math.pi * k / n)
    m = np.array(
        [
            [1, 0, 0, 0],
            [0, -w * _SQ2, _SQ2, 0],
            [0, w * _SQ2, _SQ2, 0],
            [0, 0, 0, -w],
        ],
        dtype=complex,
    )
    return GateMatrix("fourier", (float(n), float(k)), m)


def bogoliubov_gate(theta: float) -> GateMatrix:
    """Rotation by ``theta`` between the |00> and |11> occupations of a (k, -k) pair."""
    if not math.isfinite(theta):
        raise ValueError(f"Bogoliubov angle must be finite, got {theta!r}")
    c = math.cos(theta / 2.0)
    s = 1j * math.sin(theta / 2.0)
    m = np.array(
        [[c, 0, 0, s], [0, 1, 0, 0], [0, 0, 1, 0], [s, 0, 0, c]], dtype=complex
    )
    return GateMatrix("bog", (theta,), m)


def time_evolution_gate(e: float, eps: float, lam: float, t: float) -> GateMatrix:
    """Single-mode evolution phase in the diagonal basis.

    The unoccupied branch advances by exp(-i t (-e + eps - lam)) and the
    occupied branch by an extra exp(-i 2 t e), matching the per-mode terms of
    the diagonalized Hamiltonian.
    """
    for name, value in (("e", e), ("eps", eps), ("lam", lam), ("t", t)):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    empty = cmath.exp(-1j * t * (-e + eps - lam))
    m = np.diag([empty, empty * cmath.exp(-2j * t * e)])
    return GateMatrix("tevol", (e, eps, lam, t), m)


_BUILDERS = {
    "x": lambda p: x(),
    "h": lambda p: h(),
    "phase": lambda p: phase(p[0]),
    "cz": lambda p: cz(),
    "cnot": lambda p: cnot(),
    "swap": lambda p: swap(),
    "ch": lambda p: ch(),
    "crx": lambda p: crx(p[0]),
    "fswap": lambda p: fswap(),
    "fourier": lambda p: fourier_gate(int(p[0]), int(p[1])),
    "fourier_dag": lambda p: gate_dagger(fourier_gate(int(p[0]), int(p[1]))),
    "bog": lambda p: bogoliubov_gate(p[0]),
    "tevol": lambda p: time_evolution_gate(*p),
}

_PARAM_COUNTS = {
    "x": 0,
    "h": 0,
    "phase": 1,
    "cz": 0,
    "cnot": 0,
    "swap": 0,
    "ch": 0,
    "crx": 1,
    "fswap": 0,
    "fourier": 2,
    "fourier_dag": 2,
    "bog": 1,
    "tevol": 4,
}

# Gates whose adjoint is the same gate with every parameter negated.
_NEGATE_PARAMS_ON_DAGGER = {"phase", "crx", "bog"}
# Gates that are their own adjoint.
_SELF_ADJOINT = {"x", "h", "cz", "cnot", "swap", "ch", "fswap"}


def from_name(name: str, params) -> GateMatrix:
    """Rebuild a gate from its registry name and parameter list."""
    if name not in _BUILDERS:
        raise ValueError(f"unknown gate name {name!r}")
    params = tuple(float(p) for p in params)
    if len(params) != _PARAM_COUNTS[name]:
        raise ValueError(
            f"gate {name!r} takes {_PARAM_COUNTS[name]} parameters, got {len(params)}"
        )
    return _BUILDERS[name](params)


def gate_dagger(gate: GateMatrix) -> GateMatrix:
    """Return the adjoint gate, keeping the name/params representation exact."""
    adjoint = gate.matrix.conj().T
    if gate.name in _SELF_ADJOINT:
        return GateMatrix(gate.name, gate.params, adjoint)
    if gate.name in _NEGATE_PARAMS_ON_DAGGER:
        return GateMatrix(gate.name, tuple(-p for p in gate.params), adjoint)
    if gate.name == "tevol":
        e, eps, lam, t = gate.params
        return GateMatrix("tevol", (e, eps, lam, -t), adjoint)
    if gate.name == "fourier":
        return GateMatrix("fourier_dag", gate.params, adjoint)
    if gate.name == "fourier_dag":
        return GateMatrix("fourier", gate.params, adjoint)
    raise ValueError(f"no adjoint rule for gate {gate.name!r}")


def decompose(gate: GateMatrix) -> list[GateOp]:
    """Expand a compiler gate into elementary gates over its local qubits.

    The returned sequence reproduces the gate matrix exactly (the supported
    fermionic-swap, Fourier, Bogoliubov, and time-evolution expansions carry
    no leftover global phase).

    Raises:
        UnsupportedGateError: for gates without a registered expansion.
    """
    if gate.name == "fswap":
        return [GateOp(swap(), (0, 1)), GateOp(cz(), (0, 1))]
    if gate.name == "fourier":
        n, k = int(gate.params[0]), int(gate.params[1])
        phi = -2.0 * math.pi * k / n
        return [
            GateOp(phase(phi), (1,)),
            GateOp(h(), (0,)),
            GateOp(h(), (1,)),
            GateOp(cnot(), (0, 1)),
            GateOp(h(), (0,)),
            GateOp(h(), (1,)),
            GateOp(ch(), (0, 1)),
            GateOp(h(), (0,)),
            GateOp(h(), (1,)),
            GateOp(cnot(), (0, 1)),
            GateOp(h(), (0,)),
            GateOp(h(), (1,)),
            GateOp(cz(), (0, 1)),
        ]
    if gate.name == "bog":
        (theta,) = gate.params
        return [
            GateOp(cnot(), (0, 1)),
            GateOp(x(), (1,)),
            GateOp(crx(-theta), (1, 0)),
            GateOp(x(), (1,)),
            GateOp(cnot(), (0, 1)),
        ]
    if gate.name == "tevol":
        e, eps, lam, t = gate.params
        half = -t * (-e + eps - lam)
        return [
            GateOp(phase(-2.0 * t * e), (0,)),
            GateOp(phase(half), (0,)),
            GateOp(x(), (0,)),
            GateOp(phase(half), (0,)),
            GateOp(x(), (0,)),
        ]
    raise UnsupportedGateError(f"no decomposition registered for gate {gate.name!r}")
