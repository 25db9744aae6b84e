"""Schedule files, CSV output and SVG plots.

A schedule file is a UTF-8 JSON document::

    {"chain": {"n": 2, "couplings": [1.0], "e0": 1.0},
     "segments": [
        {"type": "evolve", "gammas": [0.0, 0.0], "biases": [0.0, 0.0],
         "duration": 1.5},
        {"type": "pulse", "sites": [2], "axis": "x", "angle": 1.5707963}
     ]}

Unknown keys are rejected and site indices are 1-based.  Matrices are
written as CSV with one matrix row per line and an ``re,im`` pair per
entry, 17 significant digits, LF line endings; files are written
atomically (temp file then rename).
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np
from jsonschema import Draft202012Validator

from .chain import ChainSpec, ControlParams
from .linalg import DimensionLimitError
from .schedule import Evolve, IdealPulse, Schedule

__all__ = [
    "ScheduleFileError",
    "SCHEDULE_SCHEMA",
    "schedule_to_dict",
    "schedule_from_dict",
    "load_schedule",
    "save_schedule",
    "write_unitary_csv",
    "write_sweep_csv",
    "write_sweep_svg",
]


class ScheduleFileError(ValueError):
    """A schedule file failed to parse or validate; carries a diagnostic."""


_EVOLVE_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"const": "evolve"},
        "gammas": {"type": "array", "items": {"type": "number"}},
        "biases": {"type": "array", "items": {"type": "number"}},
        "duration": {"type": "number", "minimum": 0},
    },
    "required": ["type", "gammas", "biases", "duration"],
    "additionalProperties": False,
}

_PULSE_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"const": "pulse"},
        "sites": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "axis": {"enum": ["x", "y", "z"]},
        "angle": {"type": "number"},
    },
    "required": ["type", "sites", "axis", "angle"],
    "additionalProperties": False,
}

SCHEDULE_SCHEMA = {
    "type": "object",
    "properties": {
        "chain": {
            "type": "object",
            "properties": {
                "n": {"type": "integer", "minimum": 1},
                "couplings": {"type": "array", "items": {"type": "number", "minimum": 0}},
                "e0": {"type": "number", "exclusiveMinimum": 0},
            },
            "required": ["n", "couplings", "e0"],
            "additionalProperties": False,
        },
        "segments": {
            "type": "array",
            "items": {"oneOf": [_EVOLVE_SCHEMA, _PULSE_SCHEMA]},
        },
    },
    "required": ["chain", "segments"],
    "additionalProperties": False,
}

_VALIDATOR = Draft202012Validator(SCHEDULE_SCHEMA)


def schedule_to_dict(schedule: Schedule) -> dict:
    """Plain-dict form of a schedule, ready for JSON serialization."""
    segments = []
    for seg in schedule.segments:
        if isinstance(seg, Evolve):
            segments.append(
                {
                    "type": "evolve",
                    "gammas": list(seg.ctrl.gammas),
                    "biases": list(seg.ctrl.biases),
                    "duration": seg.duration,
                }
            )
        else:
            segments.append(
                {
                    "type": "pulse",
                    "sites": list(seg.sites),
                    "axis": seg.axis.value,
                    "angle": seg.angle,
                }
            )
    chain = {
        "n": schedule.chain.n,
        "couplings": list(schedule.chain.couplings),
        "e0": schedule.chain.e0,
    }
    return {"chain": chain, "segments": segments}


def schedule_from_dict(doc: dict) -> Schedule:
    """Validate a plain dict against the schema and build the schedule."""
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path
        )
        raise ScheduleFileError(f"{path}: {err.message}")
    chain_doc = doc["chain"]
    try:
        chain = ChainSpec(
            n=chain_doc["n"], couplings=chain_doc["couplings"], e0=chain_doc["e0"]
        )
        segments = []
        for seg in doc["segments"]:
            if seg["type"] == "evolve":
                segments.append(
                    Evolve(ControlParams(seg["gammas"], seg["biases"]), seg["duration"])
                )
            else:
                segments.append(IdealPulse(tuple(seg["sites"]), seg["axis"], seg["angle"]))
        return Schedule(chain, tuple(segments))
    except DimensionLimitError:
        raise
    except ValueError as exc:
        raise ScheduleFileError(str(exc)) from exc


def load_schedule(path) -> Schedule:
    """Read and validate a schedule file.

    Raises :class:`ScheduleFileError` with a ``line:column`` diagnostic for
    malformed JSON and a JSON-path diagnostic for schema violations.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScheduleFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return schedule_from_dict(doc)


def _atomic_write(path, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_schedule(schedule: Schedule, path) -> None:
    _atomic_write(path, json.dumps(schedule_to_dict(schedule), indent=2) + "\n")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_unitary_csv(matrix, path) -> None:
    """Row-major CSV of a complex matrix, an ``re,im`` pair per entry."""
    m = np.asarray(getattr(matrix, "matrix", matrix), dtype=complex)
    lines = []
    for row in m:
        lines.append(",".join(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def write_sweep_csv(result, path) -> None:
    """Sweep results as ``gamma,error_norm,bound_simplified,bound_raw`` rows."""
    lines = ["gamma,error_norm,bound_simplified,bound_raw"]
    for g, e, b, r in zip(
        result.gamma_values, result.error_norms, result.bound_values, result.raw_bound_values
    ):
        lines.append(f"{_fmt(g)},{_fmt(e)},{_fmt(b)},{_fmt(r)}")
    _atomic_write(path, "\n".join(lines) + "\n")


def write_sweep_svg(result, path) -> None:
    """Log-scale line plot of the pulse error and its bounds versus gamma."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(result.gamma_values, result.error_norms, marker="o", label="error norm")
    ax.plot(result.gamma_values, result.bound_values, linestyle="--", label="simplified bound")
    ax.plot(result.gamma_values, result.raw_bound_values, linestyle=":", label="raw bound")
    ax.set_yscale("log")
    ax.set_xlabel(r"pulse amplitude $\gamma / E_0$")
    ax.set_ylabel("spectral norm")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
