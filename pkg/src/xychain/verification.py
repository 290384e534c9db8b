"""Built-in self-checks for the compiler and simulator.

Each check exercises one algebraic invariant the construction relies on —
gate unitarity, decomposition identities, sorting-network permutations, the
single-particle transform law, and end-to-end diagonalization against a
dense matrix oracle.  ``run_all_checks`` bundles them for the command-line
``verify`` entry point; tests call the individual checks directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import circuits, gates, xymodel

__all__ = [
    "CheckResult",
    "all_passed",
    "check_decompositions",
    "check_diagonalization",
    "check_eigenstates",
    "check_fourier_gate_count",
    "check_fourier_transform",
    "check_fswap_product",
    "check_gate_unitarity",
    "check_mode_sort",
    "check_parity_sort",
    "check_spectrum",
    "check_time_evolution",
    "format_report",
    "run_all_checks",
]

UNITARITY_ATOL = 1e-12
DECOMPOSITION_ATOL = 1e-10
DIAGONALIZATION_ATOL = 1e-9
TRANSFORM_ATOL = 1e-10


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named invariant check."""

    name: str
    passed: bool
    detail: str


def _gate_battery() -> list[gates.GateMatrix]:
    """Representative instances of every gate family."""
    battery = [
        gates.x(),
        gates.h(),
        gates.phase(0.37),
        gates.cz(),
        gates.cnot(),
        gates.swap(),
        gates.ch(),
        gates.crx(-1.2),
        gates.fswap(),
        gates.bogoliubov_gate(0.0),
        gates.bogoliubov_gate(0.731),
        gates.bogoliubov_gate(-np.pi / 2),
        gates.time_evolution_gate(-0.4, 0.6, 1.0, 0.9),
        gates.time_evolution_gate(1.5, 1.5, 0.0, 2.0),
    ]
    for n in (2, 4, 8, 16):
        battery.extend(gates.fourier_gate(n, k) for k in range(n // 2))
    return battery


def check_gate_unitarity() -> CheckResult:
    """Every gate in the battery satisfies ``U^dag U = I``."""
    worst = 0.0
    battery = _gate_battery()
    for gate in battery:
        dim = gate.matrix.shape[0]
        err = np.abs(
            gate.matrix.conj().T @ gate.matrix - np.eye(dim)
        ).max()
        worst = max(worst, float(err))
    return CheckResult(
        "gate-unitarity",
        worst < UNITARITY_ATOL,
        f"max deviation {worst:.2e} over {len(battery)} gates",
    )


def check_fswap_product() -> CheckResult:
    """The fermionic swap equals CZ composed with SWAP, entry for entry."""
    product = gates.cz().matrix @ gates.swap().matrix
    exact = bool(np.array_equal(gates.fswap().matrix, product))
    return CheckResult(
        "fswap-product",
        exact,
        "fswap == CZ @ SWAP exactly" if exact else "fswap != CZ @ SWAP",
    )


def check_decompositions() -> CheckResult:
    """Elementary-gate expansions reproduce each compiled gate matrix."""
    battery = [
        gates.fswap(),
        gates.fourier_gate(2, 0),
        gates.fourier_gate(4, 0),
        gates.fourier_gate(4, 1),
        gates.fourier_gate(8, 1),
        gates.fourier_gate(8, 3),
        gates.fourier_gate(16, 5),
        gates.bogoliubov_gate(0.0),
        gates.bogoliubov_gate(0.731),
        gates.bogoliubov_gate(2.4),
        gates.time_evolution_gate(-0.4, 0.6, 1.0, 0.9),
        gates.time_evolution_gate(1.5, 1.5, 0.0, 2.0),
    ]
    worst = 0.0
    for gate in battery:
        ops = gates.decompose(gate)
        rebuilt = circuits.ops_to_matrix(ops, gate.num_qubits)
        worst = max(worst, float(np.abs(rebuilt - gate.matrix).max()))
    return CheckResult(
        "elementary-decompositions",
        worst < DECOMPOSITION_ATOL,
        f"max deviation {worst:.2e} over {len(battery)} gates",
    )


def check_parity_sort(sizes: tuple[int, ...] = (4, 8, 16, 32)) -> CheckResult:
    """The parity-sort network moves even wires first, odd wires after."""
    for n in sizes:
        network = circuits.parity_sort_network(n)
        expected_count = (n // 2 - 1) * (n // 2) // 2
        if len(network.ops) != expected_count:
            return CheckResult(
                "parity-sort-network",
                False,
                f"n={n}: {len(network.ops)} swaps, expected {expected_count}",
            )
        perm = circuits.wire_permutation(network)
        want = tuple(list(range(0, n, 2)) + list(range(1, n, 2)))
        if perm != want:
            return CheckResult(
                "parity-sort-network", False, f"n={n}: wrong permutation {perm}"
            )
    return CheckResult(
        "parity-sort-network",
        True,
        f"permutation and swap count match for n in {sizes}",
    )


def check_mode_sort(sizes: tuple[int, ...] = (4, 8, 16, 32)) -> CheckResult:
    """The pairing network places transform outputs in mode-table order."""
    for n in sizes:
        perm = circuits.wire_permutation(circuits.bogoliubov_sort_network(n))
        fft_modes = circuits.fft_output_modes(n)
        final = tuple(fft_modes[perm[w]] for w in range(n))
        if final != xymodel.mode_table(n):
            return CheckResult(
                "mode-pairing-network", False, f"n={n}: wrong mode order {final}"
            )
    return CheckResult(
        "mode-pairing-network",
        True,
        f"pairing order matches the mode table for n in {sizes}",
    )


def check_fourier_transform(sizes: tuple[int, ...] = (4, 8)) -> CheckResult:
    """On one excitation, the transform circuit acts as the DFT matrix."""
    worst = 0.0
    for n in sizes:
        unitary = circuits.to_unitary(circuits.fft_circuit(n))
        modes = circuits.fft_output_modes(n)
        sub = np.zeros((n, n), dtype=complex)
        for col in range(n):
            column = unitary[:, 1 << (n - 1 - col)]
            for wire in range(n):
                sub[modes[wire] % n, col] = column[1 << (n - 1 - wire)]
        dft = np.exp(
            -2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n
        ) / np.sqrt(n)
        worst = max(worst, float(np.abs(sub - dft).max()))
        leak = sum(
            abs(unitary[i, 1 << (n - 1)]) ** 2
            for i in range(2**n)
            if bin(i).count("1") != 1
        )
        if leak > 1e-18:
            return CheckResult(
                "fourier-single-particle",
                False,
                f"n={n}: excitation number not conserved (leak {leak:.2e})",
            )
    return CheckResult(
        "fourier-single-particle",
        worst < TRANSFORM_ATOL,
        f"max deviation from DFT {worst:.2e} for n in {sizes}",
    )


def check_fourier_gate_count(
    sizes: tuple[int, ...] = (4, 8, 16, 32, 64)
) -> CheckResult:
    """The transform uses exactly ``(n/2) log2 n`` two-mode Fourier gates."""
    for n in sizes:
        counts = circuits.stats(circuits.fft_circuit(n))["by_name"]
        want = (n // 2) * int(np.log2(n))
        if counts.get("fourier", 0) != want:
            return CheckResult(
                "fourier-gate-count",
                False,
                f"n={n}: {counts.get('fourier', 0)} gates, expected {want}",
            )
    return CheckResult(
        "fourier-gate-count",
        True,
        f"count equals (n/2) log2(n) for n in {sizes}",
    )


def _grid_cases(include_n8: bool) -> list[xymodel.ModelParams]:
    cases = [
        xymodel.ModelParams(4, j, gam, lam)
        for lam in (0.0, 0.5, 1.0, 2.0)
        for gam in (0.0, 1.0)
        for j in (-1.0, 1.0)
    ]
    if include_n8:
        cases.append(xymodel.ModelParams(8, 1.0, 0.5, 1.0))
    return cases


def check_diagonalization(include_n8: bool = True) -> CheckResult:
    """Conjugating the dense Hamiltonian is diagonal with known entries."""
    worst_off = 0.0
    worst_diag = 0.0
    cases = _grid_cases(include_n8)
    for params in cases:
        unitary = circuits.to_unitary(circuits.diagonalization_circuit(params))
        dense = xymodel.dense_hamiltonian(params)
        rotated = unitary @ dense @ unitary.conj().T
        off = rotated - np.diag(np.diag(rotated))
        worst_off = max(
            worst_off, float(np.linalg.norm(off) / np.linalg.norm(dense))
        )
        want = np.array(
            [
                xymodel.eigen_energy(format(b, f"0{params.n}b"), params)
                for b in range(2**params.n)
            ]
        )
        worst_diag = max(
            worst_diag, float(np.abs(np.diag(rotated).real - want).max())
        )
    return CheckResult(
        "diagonalization",
        worst_off < DIAGONALIZATION_ATOL and worst_diag < DIAGONALIZATION_ATOL,
        f"off-diagonal fraction {worst_off:.2e}, "
        f"diagonal deviation {worst_diag:.2e} over {len(cases)} cases",
    )


def check_spectrum(include_n8: bool = True) -> CheckResult:
    """Occupation-label energies reproduce the dense spectrum as a multiset."""
    worst = 0.0
    cases = _grid_cases(include_n8)
    for params in cases:
        oracle = np.sort(np.linalg.eigvalsh(xymodel.dense_hamiltonian(params)))
        labelled = np.sort(
            [
                xymodel.eigen_energy(format(b, f"0{params.n}b"), params)
                for b in range(2**params.n)
            ]
        )
        worst = max(worst, float(np.abs(oracle - labelled).max()))
    return CheckResult(
        "spectrum",
        worst < DIAGONALIZATION_ATOL,
        f"max eigenvalue deviation {worst:.2e} over {len(cases)} cases",
    )


def check_eigenstates() -> CheckResult:
    """Prepared eigenstates satisfy ``H psi = E psi`` to working precision."""
    params = xymodel.ModelParams(4, 1.0, 0.5, 0.75)
    dense = xymodel.dense_hamiltonian(params)
    worst = 0.0
    for b in range(16):
        bits = format(b, "04b")
        psi = circuits.eigenstate(params, bits).amps
        energy = xymodel.eigen_energy(bits, params)
        worst = max(worst, float(np.linalg.norm(dense @ psi - energy * psi)))
    return CheckResult(
        "eigenstate-residuals",
        worst < DIAGONALIZATION_ATOL,
        f"max residual {worst:.2e} over all 16 labels",
    )


def check_time_evolution() -> CheckResult:
    """Quench magnetization matches its closed form on a time grid."""
    worst = 0.0
    for lam in (0.5, 1.25):
        params = xymodel.ModelParams(4, 1.0, 1.0, lam)
        for t in np.linspace(0.0, 3.0, 25):
            state = circuits.evolved_state(params, "0000", float(t))
            probs = np.abs(state.amps) ** 2
            indices = np.arange(16)
            mz = sum(
                float(np.sum(probs * (1 - 2 * ((indices >> (3 - q)) & 1))))
                for q in range(4)
            ) / 4
            worst = max(
                worst, abs(mz - xymodel.mz_time_closed_form(lam, float(t)))
            )
    return CheckResult(
        "time-evolution",
        worst < DIAGONALIZATION_ATOL,
        f"max deviation from closed form {worst:.2e}",
    )


def run_all_checks(max_n: int = 16) -> list[CheckResult]:
    """Run the full battery; network checks go up to ``max_n`` wires."""
    if max_n < 4:
        raise ValueError(f"max_n must be at least 4, got {max_n}")
    sizes = []
    n = 4
    while n <= max_n:
        sizes.append(n)
        n *= 2
    sizes = tuple(sizes)
    transform_sizes = tuple(s for s in (4, 8) if s <= max_n)
    include_n8 = max_n >= 8
    return [
        check_gate_unitarity(),
        check_fswap_product(),
        check_decompositions(),
        check_parity_sort(sizes),
        check_mode_sort(sizes),
        check_fourier_transform(transform_sizes),
        check_fourier_gate_count(),
        check_diagonalization(include_n8),
        check_spectrum(include_n8),
        check_eigenstates(),
        check_time_evolution(),
    ]


def format_report(results: list[CheckResult]) -> str:
    """Aligned pass/fail table with a one-line summary."""
    width = max(len(r.name) for r in results)
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}"
        for r in results
    ]
    failed = sum(not r.passed for r in results)
    if failed:
        lines.append(f"{failed} of {len(results)} checks failed")
    else:
        lines.append(f"all {len(results)} checks passed")
    return "\n".join(lines)


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)
