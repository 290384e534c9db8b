"""Command-line interface: sweeps, quench dynamics, self-checks, circuit export.

Every run is deterministic for a fixed set of flags: sweep point ``i`` uses
``seed + i`` so rows are independent but reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import circuits, observables, statevector, verification, xymodel

__all__ = ["main"]

_CLOSED_FORM_CONTEXT = {"n": 4, "j": 1.0, "gamma": 1.0}


def _fmt(value: float) -> str:
    return format(value + 0.0, ".12g")  # +0.0 folds -0.0 into 0.0


def _write_text(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _render_rows(
    header: list[str], rows: list[dict], fmt: str, config: dict
) -> str:
    """Serialize sweep rows as CSV (12 significant digits) or JSON."""
    if fmt == "json":
        return json.dumps({"config": config, "rows": rows}, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [
                ""
                if row[key] is None
                else (_fmt(row[key]) if isinstance(row[key], float) else row[key])
                for key in header
            ]
        )
    return buffer.getvalue()


def _sweep_values(start: float, stop: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ValueError(f"need at least one sweep point, got steps={steps}")
    return np.linspace(start, stop, steps)


def _resolve_state(spec: str, params: xymodel.ModelParams) -> str:
    """Turn a state flag into an occupation label."""
    if spec == "gs":
        return xymodel.ground_bitstring(params)
    if spec == "excited":
        return xymodel.first_excited_bitstring(params)
    if len(spec) == params.n and set(spec) <= {"0", "1"}:
        return spec
    raise ValueError(
        f"state must be 'gs', 'excited', or a {params.n}-bit string of 0/1, "
        f"got {spec!r}"
    )


def _closed_form_context(args: argparse.Namespace) -> bool:
    return (
        args.n == _CLOSED_FORM_CONTEXT["n"]
        and args.j == _CLOSED_FORM_CONTEXT["j"]
        and args.gamma == _CLOSED_FORM_CONTEXT["gamma"]
    )


def _cmd_energy_sweep(args: argparse.Namespace) -> int:
    estimator = (
        observables.estimate_energy_grouped
        if args.estimator == "grouped"
        else observables.estimate_energy_diagonal
    )
    rows = []
    for index, lam in enumerate(
        _sweep_values(args.lambda_start, args.lambda_stop, args.lambda_steps)
    ):
        params = xymodel.ModelParams(args.n, args.j, args.gamma, float(lam))
        bits = _resolve_state(args.state, params)
        state = circuits.eigenstate(params, bits)
        record = estimator(params, state, args.shots, args.seed + index)
        rows.append(
            {
                "lambda": float(lam),
                "exact_energy": xymodel.eigen_energy(bits, params),
                "sampled_mean": record.mean,
                "std_error": record.std_error,
                "shots": record.shots,
            }
        )
    config = {
        "n": args.n,
        "j": args.j,
        "gamma": args.gamma,
        "state": args.state,
        "estimator": args.estimator,
        "shots": args.shots,
        "seed": args.seed,
    }
    header = ["lambda", "exact_energy", "sampled_mean", "std_error", "shots"]
    _write_text(_render_rows(header, rows, args.format, config), args.out)
    return 0


def _cmd_magnetization_sweep(args: argparse.Namespace) -> int:
    closed_form = _closed_form_context(args)
    rows = []
    for index, lam in enumerate(
        _sweep_values(args.lambda_start, args.lambda_stop, args.lambda_steps)
    ):
        params = xymodel.ModelParams(args.n, args.j, args.gamma, float(lam))
        state = circuits.eigenstate(params, xymodel.ground_bitstring(params))
        record = observables.estimate_mz_shots(state, args.shots, args.seed + index)
        rows.append(
            {
                "lambda": float(lam),
                "exact_mz": observables.magnetization(state),
                "closed_form_mz": (
                    xymodel.gs_mz_closed_form(float(lam)) if closed_form else None
                ),
                "sampled_mean": record.mean,
                "std_error": record.std_error,
            }
        )
    config = {
        "n": args.n,
        "j": args.j,
        "gamma": args.gamma,
        "shots": args.shots,
        "seed": args.seed,
    }
    header = ["lambda", "exact_mz", "closed_form_mz", "sampled_mean", "std_error"]
    _write_text(_render_rows(header, rows, args.format, config), args.out)
    return 0


def _cmd_evolve(args: argparse.Namespace) -> int:
    params = xymodel.ModelParams(args.n, args.j, args.gamma, args.lam)
    bits = "0" * args.n if args.state is None else args.state
    if len(bits) != params.n or set(bits) - {"0", "1"}:
        raise ValueError(
            f"initial state must be a {params.n}-bit spin configuration of 0/1, "
            f"got {bits!r}"
        )
    closed_form = _closed_form_context(args) and bits == "0" * args.n
    dis = circuits.diagonalization_circuit(params)
    dis_dag = circuits.dagger(dis)
    rotated = circuits.run(dis, statevector.basis_state(bits))
    rows = []
    for index, t in enumerate(
        _sweep_values(args.t_start, args.t_stop, args.t_steps)
    ):
        state = circuits.run(circuits.time_evolution_circuit(params, float(t)), rotated)
        state = circuits.run(dis_dag, state)
        record = observables.estimate_mz_shots(state, args.shots, args.seed + index)
        rows.append(
            {
                "t": float(t),
                "exact_mz": observables.magnetization(state),
                "closed_form_mz": (
                    xymodel.mz_time_closed_form(args.lam, float(t))
                    if closed_form
                    else None
                ),
                "sampled_mean": record.mean,
                "std_error": record.std_error,
            }
        )
    config = {
        "n": args.n,
        "j": args.j,
        "gamma": args.gamma,
        "lambda": args.lam,
        "state": bits,
        "shots": args.shots,
        "seed": args.seed,
    }
    header = ["t", "exact_mz", "closed_form_mz", "sampled_mean", "std_error"]
    _write_text(_render_rows(header, rows, args.format, config), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verification.run_all_checks(args.max_n)
    _write_text(verification.format_report(results) + "\n", args.out)
    return 0 if verification.all_passed(results) else 1


def _cmd_emit_circuit(args: argparse.Namespace) -> int:
    params = xymodel.ModelParams(args.n, args.j, args.gamma, args.lam)
    if args.circuit == "dis":
        circuit = circuits.diagonalization_circuit(params)
    else:
        circuit = circuits.time_evolution_circuit(params, args.t)
    _write_text(circuits.circuit_to_json(circuit) + "\n", args.out)
    return 0


def _add_model_flags(parser: argparse.ArgumentParser, sweep_lambda: bool) -> None:
    parser.add_argument(
        "--n", type=int, default=4, help="chain length, a power of two >= 4"
    )
    parser.add_argument("--j", type=float, default=1.0, help="coupling strength")
    parser.add_argument("--gamma", type=float, default=1.0, help="anisotropy")
    if sweep_lambda:
        parser.add_argument(
            "--lambda-start", type=float, default=0.0, help="first field value"
        )
        parser.add_argument(
            "--lambda-stop", type=float, default=2.0, help="last field value"
        )
        parser.add_argument(
            "--lambda-steps", type=int, default=41, help="number of field values"
        )
    else:
        parser.add_argument(
            "--lambda",
            dest="lam",
            type=float,
            default=0.5,
            help="transverse field strength",
        )


def _add_sampling_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--shots", type=int, default=1000, help="measurement shots per point"
    )
    parser.add_argument(
        "--seed", type=int, default=7, help="base RNG seed; point i uses seed+i"
    )


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    parser.add_argument(
        "--out", default="-", help="output path, or '-' for stdout"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xychain",
        description=(
            "Exact circuit compiler and statevector simulator for the "
            "transverse-field XY chain"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    energy = sub.add_parser(
        "energy-sweep", help="eigenstate energy across a field sweep"
    )
    _add_model_flags(energy, sweep_lambda=True)
    energy.add_argument(
        "--state",
        default="gs",
        help="'gs', 'excited', or an explicit occupation bitstring",
    )
    energy.add_argument(
        "--estimator",
        choices=("grouped", "diagonal"),
        default="grouped",
        help="measure Pauli groups or measure in the eigenbasis",
    )
    _add_sampling_flags(energy)
    _add_output_flags(energy)
    energy.set_defaults(func=_cmd_energy_sweep)

    mag = sub.add_parser(
        "magnetization-sweep", help="ground-state magnetization across a field sweep"
    )
    _add_model_flags(mag, sweep_lambda=True)
    _add_sampling_flags(mag)
    _add_output_flags(mag)
    mag.set_defaults(func=_cmd_magnetization_sweep)

    evolve = sub.add_parser(
        "evolve", help="magnetization dynamics after a quench"
    )
    _add_model_flags(evolve, sweep_lambda=False)
    evolve.add_argument(
        "--state",
        default=None,
        help="initial spin configuration bitstring (default: all up)",
    )
    evolve.add_argument("--t-start", type=float, default=0.0, help="first time")
    evolve.add_argument("--t-stop", type=float, default=2.0, help="last time")
    evolve.add_argument(
        "--t-steps", type=int, default=101, help="number of time points"
    )
    _add_sampling_flags(evolve)
    _add_output_flags(evolve)
    evolve.set_defaults(func=_cmd_evolve)

    verify = sub.add_parser("verify", help="run the built-in self-checks")
    verify.add_argument(
        "--max-n",
        type=int,
        default=16,
        help="largest chain length for the network checks",
    )
    verify.add_argument("--out", default="-", help="report path, or '-' for stdout")
    verify.set_defaults(func=_cmd_verify)

    emit = sub.add_parser(
        "emit-circuit", help="export a compiled circuit as JSON"
    )
    _add_model_flags(emit, sweep_lambda=False)
    emit.add_argument(
        "--circuit",
        choices=("dis", "time"),
        default="dis",
        help="diagonalizing circuit or diagonal-basis evolution",
    )
    emit.add_argument(
        "--t", type=float, default=1.0, help="evolution time for --circuit time"
    )
    emit.add_argument("--out", default="-", help="output path, or '-' for stdout")
    emit.set_defaults(func=_cmd_emit_circuit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
