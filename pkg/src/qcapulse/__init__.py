"""Pulse-level simulation and verification for a line of coupled QCA cells.

The package builds explicit chain Hamiltonians, compiles piecewise-constant
pulse schedules to exact unitaries, provides refocusing-based builders for
two-cell rotations, CNOT, quantum memory and decoupled operations on longer
chains, and quantifies the error of imperfect tunnelling pulses.
"""

from .analysis import (
    HBAR_EV_SECONDS,
    SweepResult,
    TimingEstimate,
    error_bound,
    gamma_sweep,
    pulse_error_norm,
    timing_estimates,
)
from .chain import (
    ChainSpec,
    ControlParams,
    ImperfectionModel,
    build_hamiltonian,
    build_imperfect_pulse_hamiltonian,
    ideal_pulse_generator,
)
from .linalg import (
    PauliAxis,
    Unitary,
    DimensionLimitError,
    embed_pauli,
    expm_skew_hermitian,
    kron,
    phase_distance,
    spectral_norm,
)
from .schedule import (
    Evolve,
    IdealPulse,
    Schedule,
    TargetSpec,
    cnot_factor_product,
    cnot_factor_specs,
    cnot_matrix,
    cnot_schedule,
    compile_schedule,
    decoupled_schedule,
    embedded_cnot,
    icnot_schedule,
    memory_schedule,
    reduce_angle,
    refocused_z_rotation_schedule,
    refocusing_pulse_sites,
    total_duration,
    zz_rotation_schedule,
)

__version__ = "0.1.0"

__all__ = [
    "ChainSpec",
    "ControlParams",
    "DimensionLimitError",
    "Evolve",
    "HBAR_EV_SECONDS",
    "IdealPulse",
    "ImperfectionModel",
    "PauliAxis",
    "Schedule",
    "SweepResult",
    "TargetSpec",
    "TimingEstimate",
    "Unitary",
    "build_hamiltonian",
    "build_imperfect_pulse_hamiltonian",
    "cnot_factor_product",
    "cnot_factor_specs",
    "cnot_matrix",
    "cnot_schedule",
    "compile_schedule",
    "decoupled_schedule",
    "embedded_cnot",
    "embed_pauli",
    "error_bound",
    "expm_skew_hermitian",
    "gamma_sweep",
    "icnot_schedule",
    "ideal_pulse_generator",
    "kron",
    "memory_schedule",
    "phase_distance",
    "pulse_error_norm",
    "reduce_angle",
    "refocused_z_rotation_schedule",
    "refocusing_pulse_sites",
    "spectral_norm",
    "timing_estimates",
    "total_duration",
    "zz_rotation_schedule",
]
