"""Command-line front end: compile schedule files, verify builders, run sweeps.

Exit codes: 0 success (and verification passed), 1 verification failed,
2 invalid input or parameters, 3 dimension cap exceeded.  Diagnostics go
to stderr; data and reports go to stdout or the requested output files.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import analysis, fileio, schedule as sched
from .chain import ChainSpec
from .linalg import DimensionLimitError, phase_distance

__all__ = ["main", "VerifyReport"]

_BUILDERS = ("cnot", "icnot", "memory", "zrot", "zzrot", "decoupled")

_DEFAULT_TOLERANCE = {
    "cnot": 1e-9,
    "icnot": 1e-9,
    "decoupled": 1e-9,
    "memory": 1e-10,
    "zrot": 1e-10,
    "zzrot": 1e-10,
}


@dataclasses.dataclass(frozen=True)
class VerifyReport:
    """Result of comparing a compiled builder against its canonical target."""

    target: str
    phase_distance: float
    passed: bool
    tolerance: float
    total_duration: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "target": self.target,
                "phase_distance": self.phase_distance,
                "pass": self.passed,
                "tolerance": self.tolerance,
                "total_duration": self.total_duration,
            }
        )


def _parse_couplings(raw: str, n: int) -> tuple:
    parts = [p for p in raw.split(",") if p.strip() != ""]
    values = [float(p) for p in parts]
    if len(values) == 1:
        return tuple(values * (n - 1))
    if len(values) != n - 1:
        raise ValueError(f"expected 1 or {n - 1} coupling values, got {len(values)}")
    return tuple(values)


def _make_chain(args) -> ChainSpec:
    return ChainSpec(
        n=args.cells, couplings=_parse_couplings(args.couplings, args.cells), e0=args.e0
    )


def _parse_gamma_range(raw: str):
    parts = raw.split(":")
    if len(parts) != 3:
        raise ValueError(f"gamma range must be lo:hi:count, got {raw!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("gamma range count must be at least 1")
    if hi < lo:
        raise ValueError(f"descending gamma range {raw!r} rejected")
    return np.linspace(lo, hi, count)


def _parse_active(raw: str) -> tuple:
    parts = raw.split(":")
    if len(parts) == 1:
        lo = hi = int(parts[0])
    elif len(parts) == 2:
        lo, hi = int(parts[0]), int(parts[1])
    else:
        raise ValueError(f"active range must be lo:hi, got {raw!r}")
    return tuple(range(lo, hi + 1))


def _cmd_compile(args) -> int:
    try:
        program = fileio.load_schedule(args.input)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except fileio.ScheduleFileError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return 2
    except DimensionLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    unitary = sched.compile_schedule(program)
    fileio.write_unitary_csv(unitary, args.out)
    return 0


def _build_for_verify(args):
    """Build the requested schedule and its canonical target matrix."""
    chain = _make_chain(args)
    builder = args.builder
    pulses = args.pulses
    gmax = args.gamma_max
    if builder == "memory":
        program = sched.memory_schedule(
            chain, args.t_memory, pulses, simultaneous=not args.sequential, gamma_max=gmax
        )
        return program, np.eye(chain.dim, dtype=complex), f"identity ({chain.n} cells)"
    if builder == "cnot":
        program = sched.cnot_schedule(chain, args.control, pulses, gmax)
        return program, sched.cnot_matrix(), "cnot"
    if builder == "icnot":
        program = sched.icnot_schedule(chain, args.control, pulses, gmax)
        target = sched.embedded_cnot(chain.n, args.control)
        return program, target, f"cnot on sites ({args.control},{args.control + 1})"
    if builder == "zrot":
        program = sched.refocused_z_rotation_schedule(
            chain, args.site, args.angle, pulses, gmax
        )
        spec = sched.TargetSpec.z_rotation(args.site, args.angle)
        return program, spec.embedded_unitary(chain.n), f"z rotation site {args.site}"
    if builder == "zzrot":
        program = sched.zz_rotation_schedule(chain, 1, args.angle)
        spec = sched.TargetSpec.zz_rotation(1, args.angle)
        return program, spec.embedded_unitary(chain.n), "zz rotation"
    if builder == "decoupled":
        spec = sched.TargetSpec(_parse_active(args.active), args.target_kind, args.angle)
        program = sched.decoupled_schedule(chain, spec, pulses, gmax)
        label = f"decoupled {args.target_kind} on sites {spec.active_sites}"
        return program, spec.embedded_unitary(chain.n), label
    raise ValueError(f"unknown builder {builder!r}")


def _cmd_verify(args) -> int:
    try:
        program, target, label = _build_for_verify(args)
    except DimensionLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    tolerance = args.tolerance if args.tolerance is not None else _DEFAULT_TOLERANCE[args.builder]
    compiled = sched.compile_schedule(program)
    distance = phase_distance(compiled.matrix, target)
    report = VerifyReport(
        target=label,
        phase_distance=distance,
        passed=bool(distance <= tolerance),
        tolerance=tolerance,
        total_duration=sched.total_duration(program),
    )
    print(report.to_json())
    return 0 if report.passed else 1


def _cmd_sweep(args) -> int:
    try:
        gammas = _parse_gamma_range(args.gamma)
        chain = _make_chain(args)
    except DimensionLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = analysis.gamma_sweep(chain, args.epsilon, gammas)
    fileio.write_sweep_csv(result, args.out)
    if args.plot:
        fileio.write_sweep_svg(result, args.plot)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcapulse",
        description="Compile, verify and analyze pulse schedules on a QCA line.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compile = sub.add_parser("compile", help="compile a schedule file to a unitary CSV")
    p_compile.add_argument("input", help="schedule JSON file")
    p_compile.add_argument("-o", "--out", required=True, help="output CSV path")
    p_compile.set_defaults(func=_cmd_compile)

    p_verify = sub.add_parser("verify", help="compile a builder and check it against its target")
    p_verify.add_argument("--builder", required=True, choices=_BUILDERS)
    p_verify.add_argument("--cells", type=int, default=2)
    p_verify.add_argument("--couplings", default="1.0", help="single value or comma list")
    p_verify.add_argument("--e0", type=float, default=1.0)
    p_verify.add_argument("--control", type=int, default=1)
    p_verify.add_argument("--site", type=int, default=1)
    p_verify.add_argument("--angle", type=float, default=0.7853981633974483)
    p_verify.add_argument("--t-memory", type=float, default=1.0)
    p_verify.add_argument("--sequential", action="store_true")
    p_verify.add_argument("--active", default="1", help="active sites lo:hi (decoupled)")
    p_verify.add_argument("--target-kind", choices=("x", "z", "zz"), default="z")
    p_verify.add_argument("--pulses", choices=sched.PULSE_MODES, default="ideal")
    p_verify.add_argument("--gamma-max", type=float, default=sched.DEFAULT_GAMMA_MAX)
    p_verify.add_argument("--tolerance", type=float, default=None)
    p_verify.set_defaults(func=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="pulse-error sweep over the drive amplitude")
    p_sweep.add_argument("--cells", type=int, required=True)
    p_sweep.add_argument("--epsilon", type=float, required=True)
    p_sweep.add_argument("--gamma", required=True, help="range lo:hi:count")
    p_sweep.add_argument("--couplings", default="1.0")
    p_sweep.add_argument("--e0", type=float, default=1.0)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--plot", default=None, help="optional SVG plot path")
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
