"""Error analysis for imperfect tunnelling pulses and operation timing.

A real pi pulse cannot switch the couplings off: during the pulse the full
chain Hamiltonian acts, not just the intended x drive.  This module
quantifies the damage.  For a pulse of relative amplitude ``gamma`` on
site j (drive strength ``gamma * E_j``, duration ``pi hbar / (2 gamma
E_j)``) it computes the exact spectral-norm difference between the
evolution under the full Hamiltonian and under the bare drive, the
analytic upper bound ``dT ||H|| e^{dT ||H||}``, and its closed-form
simplification ``x e^x`` with ``x = pi (N - 1) / (2 gamma)`` for a
uniform chain.  The bound shrinks only when ``gamma >> N``: the pulse
amplitude must grow with the chain length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import (
    ChainSpec,
    ControlParams,
    ImperfectionModel,
    build_imperfect_pulse_hamiltonian,
    ideal_pulse_generator,
    site_energy_scale,
)
from .linalg import expm_skew_hermitian, spectral_norm

__all__ = [
    "SweepResult",
    "TimingEstimate",
    "HBAR_EV_SECONDS",
    "pulse_duration",
    "pulse_error_norm",
    "error_bound",
    "gamma_sweep",
    "timing_estimates",
]

#: hbar in eV seconds, for converting natural times to wall-clock times.
HBAR_EV_SECONDS = 6.582e-16


@dataclass(frozen=True)
class SweepResult:
    """Per-gamma error norms and bounds from an amplitude sweep."""

    gamma_values: tuple
    error_norms: tuple
    bound_values: tuple
    raw_bound_values: tuple

    def __post_init__(self):
        for name in ("gamma_values", "error_norms", "bound_values", "raw_bound_values"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        lengths = {
            len(self.gamma_values),
            len(self.error_norms),
            len(self.bound_values),
            len(self.raw_bound_values),
        }
        if len(lengths) != 1:
            raise ValueError("sweep columns must have equal length")
        if any(v < 0 for col in (self.error_norms, self.bound_values, self.raw_bound_values) for v in col):
            raise ValueError("norms and bounds must be nonnegative")

    def __len__(self) -> int:
        return len(self.gamma_values)


@dataclass(frozen=True)
class TimingEstimate:
    """Characteristic operation times in natural units (hbar / E0).

    ``single_qubit_time`` is the refocused quarter-turn z rotation
    (``pi hbar / (4 E0 P)``), ``two_qubit_time`` the long two-cell
    rotation (``15 pi hbar / (4 E_min)``), ``memory_overhead`` the two pi
    pulses a memory cycle adds (``2 * pi hbar / (2 gamma)``).
    """

    single_qubit_time: float
    two_qubit_time: float
    memory_overhead: float

    def __post_init__(self):
        if not (self.single_qubit_time > 0 and self.two_qubit_time > 0 and self.memory_overhead > 0):
            raise ValueError("characteristic times must be positive")

    def in_seconds(self, energy_scale_ev: float) -> "TimingEstimate":
        """Convert to seconds given the energy unit in electron volts."""
        if not energy_scale_ev > 0:
            raise ValueError("energy scale must be positive")
        factor = HBAR_EV_SECONDS / energy_scale_ev
        return TimingEstimate(
            self.single_qubit_time * factor,
            self.two_qubit_time * factor,
            self.memory_overhead * factor,
        )


def pulse_duration(chain: ChainSpec, model: ImperfectionModel) -> float:
    """Duration of the pi pulse: ``pi hbar / (2 gamma E_j)``.

    Zero drive strength (a fully degenerate chain) gives a zero-length
    pulse by convention.
    """
    strength = model.gamma_rel * site_energy_scale(chain, model.target)
    if strength == 0.0:
        return 0.0
    return math.pi * chain.hbar / (2.0 * strength)


def _embedded_drive_unitary(chain: ChainSpec, site: int, strength: float, scale: float):
    """exp(-i scale (-strength X(site))) embedded on the chain.

    The drive generator acts on a single site, so its exponential is the
    2x2 exponential placed in that tensor slot.
    """
    u2 = expm_skew_hermitian(ideal_pulse_generator(ChainSpec(1), 1, strength), scale)
    left = np.eye(2 ** (site - 1))
    return np.kron(np.kron(left, u2.matrix), np.eye(2 ** (chain.n - site)))


def pulse_error_norm(chain: ChainSpec, model: ImperfectionModel) -> float:
    """Exact pulse error: spectral norm of the difference of the evolutions.

    Evolves the imperfect Hamiltonian (drive plus residual tunnelling plus
    couplings) and the bare drive generator for the pi-pulse duration and
    returns ``|| U_full - U_drive ||``.
    """
    dt = pulse_duration(chain, model)
    scale = dt / chain.hbar
    h_full = build_imperfect_pulse_hamiltonian(chain, model)
    strength = model.gamma_rel * site_energy_scale(chain, model.target)
    u_full = expm_skew_hermitian(h_full, scale)
    u_drive = _embedded_drive_unitary(chain, model.target, strength, scale)
    return spectral_norm(u_full.matrix - u_drive)


def error_bound(chain: ChainSpec, model: ImperfectionModel, simplified: bool = False) -> float:
    """Analytic upper bound on the pulse error.

    With ``simplified=False`` this is ``dT ||H|| e^{dT ||H||}`` using the
    spectral norm of the full imperfect-pulse Hamiltonian.  With
    ``simplified=True`` it is the closed form ``x e^x`` with
    ``x = pi (N - 1) / (2 gamma)``, valid for a uniform chain, where the
    norm is estimated by the extreme coupling eigenvalue ``(N - 1) E``.
    """
    if simplified:
        if len(set(chain.couplings)) > 1:
            raise ValueError("the simplified bound assumes a uniform chain (single E)")
        x = math.pi * (chain.n - 1) / (2.0 * model.gamma_rel)
        return x * math.exp(x)
    dt = pulse_duration(chain, model)
    if dt == 0.0:
        return 0.0
    h_full = build_imperfect_pulse_hamiltonian(chain, model)
    x = dt * spectral_norm(h_full) / chain.hbar
    return x * math.exp(x)


def gamma_sweep(chain: ChainSpec, epsilon: float, gammas, target: int = 1) -> SweepResult:
    """Sweep the pulse amplitude and record error norms and bounds.

    Rows are ordered by ascending gamma.  The pulse acts on ``target``
    (the first cell by default); points are independent of each other.
    """
    ordered = sorted(float(g) for g in gammas)
    errors, bounds, raw_bounds = [], [], []
    for g in ordered:
        model = ImperfectionModel(gamma_rel=g, epsilon=epsilon, target=target)
        errors.append(pulse_error_norm(chain, model))
        bounds.append(error_bound(chain, model, simplified=True))
        raw_bounds.append(error_bound(chain, model, simplified=False))
    return SweepResult(tuple(ordered), tuple(errors), tuple(bounds), tuple(raw_bounds))


def timing_estimates(chain: ChainSpec, ctrl: ControlParams) -> TimingEstimate:
    """Characteristic operation times for the given chain and controls.

    Uses the largest available bias polarization for the single-qubit
    estimate, the smallest coupling for the two-qubit estimate, and the
    largest tunnelling amplitude for the pulse overhead.  Zero values make
    the corresponding time unbounded and raise.
    """
    if ctrl.n != chain.n:
        raise ValueError(f"control length {ctrl.n} does not match chain size {chain.n}")
    p = max(abs(b) for b in ctrl.biases)
    if p == 0.0:
        raise ValueError("all bias polarizations are zero: single-qubit time is unbounded")
    if chain.n < 2 or min(chain.couplings) == 0.0:
        raise ValueError("a positive coupling is required for the two-qubit time")
    g = max(ctrl.gammas)
    if g == 0.0:
        raise ValueError("all tunnelling amplitudes are zero: pulse time is unbounded")
    hbar = chain.hbar
    return TimingEstimate(
        single_qubit_time=math.pi * hbar / (4.0 * chain.e0 * p),
        two_qubit_time=15.0 * math.pi * hbar / (4.0 * min(chain.couplings)),
        memory_overhead=2.0 * math.pi * hbar / (2.0 * g),
    )
