"""XY spin-chain model data: dispersion, diagonal energies, and the dense oracle.

The Hamiltonian acts on ``n`` spins (``n`` a power of two, at least 4) with
coupling ``j``, anisotropy ``gamma``, and transverse field ``lam``:

    H = j * sum_i [ (1+gamma)/2 X_i X_{i+1} + (1-gamma)/2 Y_i Y_{i+1} ]
        + lam * sum_i Z_i
        + j (1+gamma)/2 * Y Z ... Z Y  +  j (1-gamma)/2 * X Z ... Z X

where the two string terms close the chain so that the fermionic picture has
exact momentum modes on a finite ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .exceptions import ResourceLimitError

__all__ = [
    "ModelParams",
    "PauliString",
    "QuasiParticleData",
    "dense_hamiltonian",
    "dispersion",
    "eigen_energy",
    "first_excited_bitstring",
    "free_fermion_energy",
    "ground_bitstring",
    "ground_degenerate",
    "gs_mz_closed_form",
    "hamiltonian_pauli_terms",
    "mode_table",
    "mz_time_closed_form",
    "pauli_matrix",
]

DENSE_MAX_QUBITS = 12

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True)
class ModelParams:
    """Chain length and couplings of one model instance."""

    n: int
    j: float
    gamma: float
    lam: float

    def __post_init__(self) -> None:
        if not _is_power_of_two(self.n) or self.n < 4:
            raise ValueError(f"n must be a power of two >= 4, got {self.n}")
        for name in ("j", "gamma", "lam"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class QuasiParticleData:
    """Per-mode dispersion record.

    ``e`` is the signed quasi-energy: it carries the sign of ``eps`` so that
    occupying a mode with ``e < 0`` lowers the energy, matching the rotation
    angle convention used by the Bogoliubov layer.
    """

    k: int
    eps: float
    delta: float
    big_e: float
    theta: float
    e: float


def mode_table(n: int) -> tuple[int, ...]:
    """Momentum label held by each wire once the pairing network has run.

    The order is ``(0, n/2, 1, -1, 2, -2, ..., n/2 - 1, -(n/2 - 1))``: the two
    self-paired modes first, then each ``(k, -k)`` pair on adjacent wires.
    """
    if not _is_power_of_two(n) or n < 4:
        raise ValueError(f"n must be a power of two >= 4, got {n}")
    table = [0, n // 2]
    for k in range(1, n // 2):
        table.extend((k, -k))
    return tuple(table)


def _mode_trig(k: int, n: int) -> tuple[float, float]:
    """cos/sin of 2*pi*k/n with exact zeros snapped.

    ``sin(pi)`` evaluates to ~1e-16 in floating point; left alone that turns
    the ``k = n/2`` mode into a spurious near-maximal Bogoliubov rotation
    whenever ``eps`` vanishes there.  Mode angles are rational multiples of
    pi, so anything below the snap threshold is an exact zero.
    """
    angle = 2.0 * math.pi * k / n
    c = math.cos(angle)
    s = math.sin(angle)
    if abs(c) < 1e-12:
        c = 0.0
    if abs(s) < 1e-12:
        s = 0.0
    return c, s


def dispersion(params: ModelParams, k: int) -> QuasiParticleData:
    """Dispersion data for momentum mode ``k``.

    ``theta`` is the principal-branch mixing angle (``|theta| <= pi/2``), so
    ``cos(theta) >= 0`` and the signed quasi-energy comes out as
    ``e = sign(eps) * big_e``.
    """
    n = params.n
    if not -n // 2 + 1 <= k <= n // 2:
        raise ValueError(f"mode index must lie in [{-n // 2 + 1}, {n // 2}], got {k}")
    c, s = _mode_trig(k, n)
    eps = params.lam + params.j * c
    delta = params.j * params.gamma * s
    big_e = math.hypot(eps, delta)
    if big_e == 0.0:
        theta = 0.0
        e = 0.0
    elif eps == 0.0:
        theta = math.copysign(math.pi / 2.0, delta)
        e = big_e
    else:
        cos_t = abs(eps) / big_e
        sin_t = math.copysign(1.0, eps) * delta / big_e
        theta = math.atan2(sin_t, cos_t)
        e = math.copysign(big_e, eps)
    return QuasiParticleData(k=k, eps=eps, delta=delta, big_e=big_e, theta=theta, e=e)


def _check_bits(bits: str, n: int) -> None:
    if len(bits) != n or any(c not in "01" for c in bits):
        raise ValueError(f"expected a length-{n} bitstring over {{0,1}}, got {bits!r}")


def eigen_energy(bits: str, params: ModelParams) -> float:
    """Exact eigenvalue of the diagonal-basis state labelled by ``bits``.

    Wire ``p`` holds mode ``mode_table(n)[p]``; each mode contributes
    ``2 e_k (n_k - 1/2) + eps_k - lam``.
    """
    _check_bits(bits, params.n)
    total = 0.0
    for pos, k in enumerate(mode_table(params.n)):
        d = dispersion(params, k)
        n_k = 1.0 if bits[pos] == "1" else 0.0
        total += 2.0 * d.e * (n_k - 0.5) + d.eps - params.lam
    return total


def free_fermion_energy(bits: str, params: ModelParams) -> float:
    """Isotropic-limit (gamma = 0) energy: sum_k 2 eps_k n_k - lam n.

    Provided as an independent closed form for sweep comparisons; it agrees
    with :func:`eigen_energy` when ``gamma == 0``.
    """
    _check_bits(bits, params.n)
    total = -params.lam * params.n
    for pos, k in enumerate(mode_table(params.n)):
        if bits[pos] == "1":
            total += 2.0 * dispersion(params, k).eps
    return total


def _occupations(params: ModelParams) -> tuple[str, bool]:
    """Minimal-energy occupation string plus a degeneracy flag."""
    bits = []
    degenerate = False
    for k in mode_table(params.n):
        e = dispersion(params, k).e
        bits.append("1" if e < 0.0 else "0")
        if e == 0.0:
            degenerate = True
    return "".join(bits), degenerate


def ground_bitstring(params: ModelParams) -> str:
    """Diagonal-basis label of the ground state.

    Occupies every mode with negative quasi-energy.  If some mode has
    ``e == 0`` the minimum is degenerate and the lexicographically smallest
    label is returned; see :func:`ground_degenerate`.
    """
    return _occupations(params)[0]


def ground_degenerate(params: ModelParams) -> bool:
    """Whether the diagonal spectrum minimum is degenerate."""
    return _occupations(params)[1]


def first_excited_bitstring(params: ModelParams) -> str:
    """Ground-state label with the cheapest single occupation flip applied.

    Flips the mode with the smallest ``|2 e_k|``; ties go to the smallest
    ``|k|`` and then to the positive member of the pair.
    """
    table = mode_table(params.n)
    bits = list(ground_bitstring(params))
    best_pos = min(
        range(params.n),
        key=lambda p: (abs(2.0 * dispersion(params, table[p]).e), abs(table[p]), table[p] < 0),
    )
    bits[best_pos] = "1" if bits[best_pos] == "0" else "0"
    return "".join(bits)


@dataclass(frozen=True)
class PauliString:
    """One weighted Pauli term, e.g. ``0.5 * XZZX``."""

    coefficient: float
    letters: str

    def __post_init__(self) -> None:
        if not self.letters or any(c not in "IXYZ" for c in self.letters):
            raise ValueError(f"letters must be over IXYZ, got {self.letters!r}")
        if not math.isfinite(self.coefficient):
            raise ValueError(f"coefficient must be finite, got {self.coefficient!r}")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.letters) if c != "I")


def pauli_matrix(letters: str) -> np.ndarray:
    """Dense matrix of a Pauli letter string (qubit 0 = most significant)."""
    if len(letters) > DENSE_MAX_QUBITS:
        raise ResourceLimitError(
            f"dense Pauli strings support at most {DENSE_MAX_QUBITS} qubits, "
            f"got {len(letters)}"
        )
    return reduce(np.kron, (_PAULI[c] for c in letters))


def _embed(letter: str, positions: tuple[int, ...], n: int) -> str:
    letters = ["I"] * n
    for p, c in zip(positions, letter):
        letters[p] = c
    return "".join(letters)


def hamiltonian_pauli_terms(params: ModelParams) -> list[PauliString]:
    """Weighted Pauli terms of the chain Hamiltonian; zero coefficients are dropped."""
    n = params.n
    xx = params.j * (1.0 + params.gamma) / 2.0
    yy = params.j * (1.0 - params.gamma) / 2.0
    terms = []
    for i in range(n - 1):
        if xx != 0.0:
            terms.append(PauliString(xx, _embed("XX", (i, i + 1), n)))
        if yy != 0.0:
            terms.append(PauliString(yy, _embed("YY", (i, i + 1), n)))
    if params.lam != 0.0:
        for i in range(n):
            terms.append(PauliString(params.lam, _embed("Z", (i,), n)))
    interior = "Z" * (n - 2)
    if xx != 0.0:
        terms.append(PauliString(xx, "Y" + interior + "Y"))
    if yy != 0.0:
        terms.append(PauliString(yy, "X" + interior + "X"))
    return terms


def dense_hamiltonian(params: ModelParams) -> np.ndarray:
    """Dense Hermitian matrix of the Hamiltonian (the exact oracle)."""
    if params.n > DENSE_MAX_QUBITS:
        raise ResourceLimitError(
            f"dense Hamiltonians support at most {DENSE_MAX_QUBITS} qubits, "
            f"got n={params.n}"
        )
    dim = 2**params.n
    ham = np.zeros((dim, dim), dtype=complex)
    for term in hamiltonian_pauli_terms(params):
        ham += term.coefficient * pauli_matrix(term.letters)
    return ham


def gs_mz_closed_form(lam: float) -> float:
    """Ground-state per-site magnetization of the n=4, j=1, gamma=1 chain.

    Piecewise in the field: the level crossing at ``lam = 1`` swaps which
    occupation labels the ground state, which shifts the curve by -1/2.  At
    the crossing itself the two ground states are degenerate; the branch is
    chosen to match :func:`ground_bitstring`, whose lexicographic tie-break
    selects the strong-field label there.
    """
    root = 2.0 * math.sqrt(1.0 + lam * lam)
    if lam < 1.0:
        return -lam / root
    return -0.5 - lam / root


def mz_time_closed_form(lam: float, t: float) -> float:
    """Per-site magnetization at time ``t`` for the all-up initial state.

    Valid for the n=4, j=1, gamma=1 chain evolved at field ``lam``.
    """
    lam2 = lam * lam
    return (1.0 + 2.0 * lam2 + math.cos(4.0 * t * math.sqrt(1.0 + lam2))) / (
        2.0 + 2.0 * lam2
    )
