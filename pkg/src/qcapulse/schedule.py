"""Pulse programs on a QCA line and their exact compiled unitaries.

A :class:`Schedule` is an ordered list of segments, each either a timed
evolution under the controllable chain Hamiltonian (:class:`Evolve`) or an
instantaneous ideal rotation pulse (:class:`IdealPulse`).  Compilation
multiplies the segment unitaries in time order, with every evolution taken
as ``exp(-i H dT / hbar)``.

Refocusing
----------
The couplings ``E_i Z(i)Z(i+1)`` are fixed by layout and cannot be turned
off, so unwanted terms are cancelled by sandwiching two equal evolution
halves between pi x-pulses.  Conjugation by a pi pulse on one endpoint of
a bond flips the sign of that bond's ZZ term (and of the pulsed site's Z
term); a pulse on *both* endpoints leaves the bond invariant.  Every bond
to be cancelled must therefore be hit on exactly one endpoint, which
forces the pulse set to be an alternating subset of the spectator sites --
:func:`refocusing_pulse_sites` computes it.  Terms that commute with the
pulse set survive both halves and add up; everything else cancels exactly.

Built on this are a quantum memory (net identity over a chosen hold time),
single-site z rotations, two-site zz rotations, a two-cell CNOT realized
as an eleven-factor x/z pulse sequence, and the same CNOT decoupled from
the rest of a longer chain (each factor wrapped in spectator refocusing).

Angle bookkeeping: rotation exponents are reduced to the minimal
nonnegative representative modulo 4 pi, so a requested ``e^{i a G}`` is
realized exactly (a 2 pi turn of a single-site rotation is a global minus
sign and is kept when the caller asks for it).  Durations follow from the
reduced exponent and the relevant energy scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, ControlParams, build_hamiltonian
from .linalg import (
    IDENTITY_2,
    PauliAxis,
    Unitary,
    expm_skew_hermitian,
)

__all__ = [
    "Evolve",
    "IdealPulse",
    "Schedule",
    "TargetSpec",
    "compile_schedule",
    "total_duration",
    "reduce_angle",
    "refocusing_pulse_sites",
    "zz_rotation_schedule",
    "refocused_z_rotation_schedule",
    "memory_schedule",
    "decoupled_schedule",
    "cnot_schedule",
    "icnot_schedule",
    "cnot_factor_specs",
    "cnot_factor_product",
    "cnot_matrix",
    "embedded_cnot",
    "DEFAULT_GAMMA_MAX",
    "MIN_GAMMA_MAX",
    "PULSE_MODES",
]

#: Default square-pulse tunnelling amplitude (units of E0).
DEFAULT_GAMMA_MAX = 50.0

#: Smallest physically meaningful pulse amplitude; slower pulses are refused.
MIN_GAMMA_MAX = 1.0

PULSE_MODES = ("ideal", "physical")

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class Evolve:
    """Evolution under the chain Hamiltonian for a fixed time (hbar/E0 units)."""

    ctrl: ControlParams
    duration: float

    def __post_init__(self):
        object.__setattr__(self, "duration", float(self.duration))
        if not self.duration >= 0:
            raise ValueError(f"duration must be nonnegative, got {self.duration}")


@dataclass(frozen=True)
class IdealPulse:
    """Instantaneous rotation ``exp(i angle sum_{i in sites} sigma_axis(i))``."""

    sites: tuple
    axis: PauliAxis
    angle: float

    def __post_init__(self):
        sites = tuple(sorted({int(s) for s in self.sites}))
        if not sites:
            raise ValueError("pulse must act on at least one site")
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "axis", PauliAxis.coerce(self.axis))
        object.__setattr__(self, "angle", float(self.angle))


@dataclass(frozen=True)
class Schedule:
    """An ordered pulse program; segment 1 is applied first in time."""

    chain: ChainSpec
    segments: tuple

    def __post_init__(self):
        segments = tuple(self.segments)
        for seg in segments:
            if isinstance(seg, Evolve):
                if seg.ctrl.n != self.chain.n:
                    raise ValueError(
                        f"segment controls cover {seg.ctrl.n} cells, chain has {self.chain.n}"
                    )
            elif isinstance(seg, IdealPulse):
                if seg.sites[0] < 1 or seg.sites[-1] > self.chain.n:
                    raise ValueError(f"pulse sites {seg.sites} outside 1..{self.chain.n}")
            else:
                raise TypeError(f"unknown segment type {type(seg).__name__}")
        object.__setattr__(self, "segments", segments)

    def __add__(self, other: "Schedule") -> "Schedule":
        if not isinstance(other, Schedule):
            return NotImplemented
        if other.chain != self.chain:
            raise ValueError("cannot concatenate schedules for different chains")
        return Schedule(self.chain, self.segments + other.segments)

    def __len__(self) -> int:
        return len(self.segments)


def reduce_angle(angle: float) -> float:
    """Minimal nonnegative representative of a rotation exponent modulo 4 pi."""
    a = math.fmod(float(angle), _FOUR_PI)
    if a < 0.0:
        a += _FOUR_PI
    return a


def _pulse_unitary(n: int, sites, axis: PauliAxis, angle: float) -> np.ndarray:
    """exp(i angle sum sigma_axis(i)): a tensor product of 2x2 rotations."""
    single = math.cos(angle) * IDENTITY_2 + 1j * math.sin(angle) * axis.matrix
    out = np.array([[1.0 + 0.0j]])
    site_set = set(sites)
    for k in range(1, n + 1):
        out = np.kron(out, single if k in site_set else IDENTITY_2)
    return out


def compile_schedule(schedule: Schedule) -> Unitary:
    """Compile a schedule to its exact unitary.

    Returns ``U = U_k ... U_2 U_1`` with the first-in-time segment
    rightmost; an empty schedule compiles to the identity.
    """
    chain = schedule.chain
    u = np.eye(chain.dim, dtype=complex)
    for seg in schedule.segments:
        if isinstance(seg, Evolve):
            if seg.duration == 0.0:
                continue
            h = build_hamiltonian(chain, seg.ctrl)
            u = expm_skew_hermitian(h, seg.duration / chain.hbar).matrix @ u
        else:
            u = _pulse_unitary(chain.n, seg.sites, seg.axis, seg.angle) @ u
    return Unitary(u)


def total_duration(schedule: Schedule) -> float:
    """Total wall time of a schedule: evolution segments only, pulses are free."""
    return sum(seg.duration for seg in schedule.segments if isinstance(seg, Evolve))


def refocusing_pulse_sites(n: int, active=()) -> tuple:
    """Spectator sites receiving pi pulses so all unwanted bonds cancel.

    Every bond not internal to the active block must see a pulse on exactly
    one endpoint, so the pulsed sites alternate through each spectator run,
    anchored at the active block's boundary.  With no active block the even
    sites ``2, 4, ...`` are pulsed.

    Parameters
    ----------
    n : int
        Chain length.
    active : sequence of int
        Contiguous block of sites left untouched (may be empty).
    """
    active = tuple(sorted(int(s) for s in active))
    if active:
        lo, hi = active[0], active[-1]
        if active != tuple(range(lo, hi + 1)):
            raise ValueError(f"active sites {active} are not contiguous")
        if lo < 1 or hi > n:
            raise ValueError(f"active sites {active} outside 1..{n}")
        left = range(lo - 1, 0, -2)
        right = range(hi + 1, n + 1, 2)
        return tuple(sorted(list(left) + list(right)))
    return tuple(range(2, n + 1, 2))


def _require_mode(pulses: str) -> str:
    if pulses not in PULSE_MODES:
        raise ValueError(f"pulses must be one of {PULSE_MODES}, got {pulses!r}")
    return pulses


def _require_gamma(gamma_max: float) -> float:
    if not gamma_max >= MIN_GAMMA_MAX:
        raise ValueError(
            f"gamma_max = {gamma_max} is below the configured minimum {MIN_GAMMA_MAX}; "
            "the pulse would be too slow to be meaningful"
        )
    return float(gamma_max)


def _pi_pulse_segments(
    chain: ChainSpec,
    sites,
    pulses: str,
    gamma_max: float,
    sequential: bool = False,
    reverse: bool = False,
) -> list:
    """One refocusing phase: pi x-pulses on ``sites`` (possibly none)."""
    sites = tuple(sites)
    if not sites:
        return []
    ordered = tuple(reversed(sites)) if reverse else sites
    if pulses == "ideal":
        if sequential:
            return [IdealPulse((s,), PauliAxis.X, math.pi / 2) for s in ordered]
        return [IdealPulse(sites, PauliAxis.X, math.pi / 2)]
    gamma_max = _require_gamma(gamma_max)
    dt = math.pi * chain.hbar / (2.0 * gamma_max)
    n = chain.n
    if sequential:
        segs = []
        for s in ordered:
            gammas = tuple(gamma_max if k == s else 0.0 for k in range(1, n + 1))
            segs.append(Evolve(ControlParams(gammas, (0.0,) * n), dt))
        return segs
    gammas = tuple(gamma_max if k in sites else 0.0 for k in range(1, n + 1))
    return [Evolve(ControlParams(gammas, (0.0,) * n), dt)]


def _x_pulse_segment(
    chain: ChainSpec, site: int, angle: float, pulses: str, gamma_max: float
):
    """A single-site x rotation by ``angle`` (exact pulse or square drive)."""
    if pulses == "ideal":
        return IdealPulse((site,), PauliAxis.X, angle)
    gamma_max = _require_gamma(gamma_max)
    theta = reduce_angle(angle)
    n = chain.n
    gammas = tuple(gamma_max if k == site else 0.0 for k in range(1, n + 1))
    return Evolve(ControlParams(gammas, (0.0,) * n), theta * chain.hbar / gamma_max)


def zz_rotation_schedule(chain: ChainSpec, bond: int, angle: float) -> Schedule:
    """Bare two-cell rotation ``e^{i angle Z(1)Z(2)}`` on a 2-cell chain.

    All controls are zero, so the only surviving Hamiltonian term is the
    coupling and the evolution is ``e^{i E1 dT ZZ / hbar}``; the duration
    is the reduced exponent over the bond energy.  For longer chains use
    :func:`decoupled_schedule` with a zz target.
    """
    if chain.n != 2:
        raise ValueError("bare zz rotation is defined on a 2-cell chain")
    if bond != 1:
        raise ValueError(f"2-cell chain has only bond 1, got {bond}")
    e_bond = chain.couplings[0]
    theta = reduce_angle(angle)
    if theta == 0.0:
        return Schedule(chain, (Evolve(ControlParams.off(2), 0.0),))
    if e_bond == 0.0:
        raise ValueError("bond energy is zero; nonzero zz rotation is unreachable")
    return Schedule(chain, (Evolve(ControlParams.off(2), theta * chain.hbar / e_bond),))


def refocused_z_rotation_schedule(
    chain: ChainSpec,
    site: int,
    angle: float,
    pulses: str = "ideal",
    gamma_max: float = DEFAULT_GAMMA_MAX,
    spectator_bias: float = 0.0,
) -> Schedule:
    """Single-site z rotation on a 2-cell chain with the coupling refocused.

    Four segments: evolve with the rotated site fully biased, pi pulse on
    the other site, the same evolution again, pi pulse again.  Conjugation
    by the pulse flips the coupling and the spectator's z term, so over the
    two halves only the rotated site's bias survives:  the compiled
    unitary is ``e^{i angle Z(site)}`` up to a global phase, for any value
    of the coupling or of ``spectator_bias``.

    The rotated site's polarization is -1 and each half lasts
    ``theta * hbar / (2 E0)`` with ``theta`` the reduced exponent.
    """
    if chain.n != 2:
        raise ValueError("refocused z rotation is defined on a 2-cell chain")
    if site not in (1, 2):
        raise ValueError(f"site must be 1 or 2, got {site}")
    _require_mode(pulses)
    other = 2 if site == 1 else 1
    theta = reduce_angle(angle)
    dt = theta * chain.hbar / (2.0 * chain.e0)
    biases = tuple(-1.0 if k == site else float(spectator_bias) for k in (1, 2))
    evolve = Evolve(ControlParams((0.0, 0.0), biases), dt)
    pulse = _pi_pulse_segments(chain, (other,), pulses, gamma_max)
    return Schedule(chain, tuple([evolve] + pulse + [evolve] + pulse))


def memory_schedule(
    chain: ChainSpec,
    t_memory: float,
    pulses: str = "ideal",
    simultaneous: bool = True,
    gamma_max: float = DEFAULT_GAMMA_MAX,
) -> Schedule:
    """Hold the chain state for ``t_memory``: a schedule compiling to identity.

    Two refocusing phases of pi x-pulses on alternating sites bracket two
    free evolutions of ``t_memory / 2`` each (all controls off), so every
    coupling cancels between the halves and the net unitary is the
    identity up to a global phase, for any hold time.  In sequential mode
    the pulses of a phase are emitted one site at a time (second phase in
    reverse site order); simultaneous mode drives them together, which is
    the same unitary because same-axis single-site rotations commute.
    """
    if not t_memory >= 0:
        raise ValueError(f"t_memory must be nonnegative, got {t_memory}")
    _require_mode(pulses)
    n = chain.n
    pulse_sites = refocusing_pulse_sites(n)
    half = Evolve(ControlParams.off(n), t_memory / 2.0)
    phase1 = _pi_pulse_segments(
        chain, pulse_sites, pulses, gamma_max, sequential=not simultaneous
    )
    phase2 = _pi_pulse_segments(
        chain, pulse_sites, pulses, gamma_max, sequential=not simultaneous, reverse=True
    )
    return Schedule(chain, tuple(phase1 + [half] + phase2 + [half]))


@dataclass(frozen=True)
class TargetSpec:
    """An operation on a contiguous active block, spectators held at identity.

    ``kind`` names the generator drawn from the available controls: an x
    drive on one active site, a z bias on one active site, or the zz
    coupling of the active bond.  The target unitary on the active block
    is ``e^{i angle G}``.
    """

    active_sites: tuple
    kind: str
    angle: float

    def __post_init__(self):
        sites = tuple(sorted(int(s) for s in self.active_sites))
        if not sites:
            raise ValueError("active sites must be nonempty")
        if sites[0] < 1:
            raise ValueError(f"active sites {sites} must be >= 1")
        if sites != tuple(range(sites[0], sites[-1] + 1)):
            raise ValueError(f"active sites {sites} are not contiguous")
        object.__setattr__(self, "active_sites", sites)
        object.__setattr__(self, "angle", float(self.angle))
        if self.kind not in ("x", "z", "zz"):
            raise ValueError(
                f"target kind {self.kind!r} is not expressible from the available "
                "controls (x, z, zz)"
            )
        expected = 2 if self.kind == "zz" else 1
        if len(sites) != expected:
            raise ValueError(f"{self.kind} target needs {expected} active site(s), got {sites}")

    @classmethod
    def x_rotation(cls, site: int, angle: float) -> "TargetSpec":
        return cls((site,), "x", angle)

    @classmethod
    def z_rotation(cls, site: int, angle: float) -> "TargetSpec":
        return cls((site,), "z", angle)

    @classmethod
    def zz_rotation(cls, left_site: int, angle: float) -> "TargetSpec":
        return cls((left_site, left_site + 1), "zz", angle)

    @property
    def active_unitary(self) -> Unitary:
        """``e^{i angle G}`` on the active block (dim ``2**len(active_sites)``)."""
        if self.kind == "zz":
            gen = np.kron(PauliAxis.Z.matrix, PauliAxis.Z.matrix)
        else:
            gen = PauliAxis.coerce(self.kind).matrix
        return expm_skew_hermitian(gen, -self.angle)

    def embedded_unitary(self, n: int) -> np.ndarray:
        """The target on the full chain: identity everywhere but the block."""
        lo, hi = self.active_sites[0], self.active_sites[-1]
        u = np.kron(np.eye(2 ** (lo - 1)), self.active_unitary.matrix)
        return np.kron(u, np.eye(2 ** (n - hi)))


def decoupled_schedule(
    chain: ChainSpec,
    target: TargetSpec,
    pulses: str = "ideal",
    gamma_max: float = DEFAULT_GAMMA_MAX,
) -> Schedule:
    """Apply a target operation on its active block, spectators refocused.

    The operation is split into two half evolutions bracketed by pi pulses
    on the alternating spectator subset: ``[V-half, pulses, V-half,
    pulses]``.  Half the intended rotation runs in each evolution; the
    pulses flip every bond touching a spectator, so those couplings cancel
    between the halves while the active generator adds up.  The compiled
    unitary equals the embedded target up to a global phase.

    For z and zz targets the halves are timed evolutions under the full
    chain Hamiltonian (spectator controls zero).  For x targets the halves
    are half-angle drive pulses on the active site; with ideal pulses the
    couplings do not act during them at all.
    """
    _require_mode(pulses)
    n = chain.n
    lo, hi = target.active_sites[0], target.active_sites[-1]
    if hi > n:
        raise ValueError(f"active sites {target.active_sites} outside 1..{n}")
    spectators = refocusing_pulse_sites(n, target.active_sites)
    theta = reduce_angle(target.angle)

    if target.kind == "x":
        half = _x_pulse_segment(chain, lo, target.angle / 2.0, pulses, gamma_max)
    elif target.kind == "z":
        dt = theta * chain.hbar / (2.0 * chain.e0)
        biases = tuple(-1.0 if k == lo else 0.0 for k in range(1, n + 1))
        half = Evolve(ControlParams((0.0,) * n, biases), dt)
    else:
        e_bond = chain.couplings[lo - 1]
        if e_bond == 0.0 and theta != 0.0:
            raise ValueError(f"bond {lo} energy is zero; zz target is unreachable")
        dt = 0.0 if theta == 0.0 else theta * chain.hbar / (2.0 * e_bond)
        half = Evolve(ControlParams.off(n), dt)

    pulse = _pi_pulse_segments(chain, spectators, pulses, gamma_max)
    return Schedule(chain, tuple([half] + pulse + [half] + pulse))


def cnot_factor_specs(control: int) -> tuple:
    """The eleven x/z factors of the CNOT pulse sequence, in applied order.

    Each entry is a :class:`TargetSpec` on sites ``control`` (c) and
    ``control + 1`` (t); the compiled product of the realized factors is
    the CNOT with the given control, up to a global phase:

        z_t(pi/2) z_t(pi/4) x_t(-pi/4) z_t(15pi/4) zz(-pi/4) z_c(pi/4)
        z_t(pi/4) z_t(pi/2) z_t(pi/4) x_t(-pi/4) z_t(15pi/4)

    The quarter-turn zz factor is run as the long ``15 pi / 4`` evolution
    of the coupling, and the two long z factors keep the pulse-time
    accounting of the physical sequence.
    """
    c, t = control, control + 1
    pi = math.pi
    return (
        TargetSpec.z_rotation(t, pi / 2),
        TargetSpec.z_rotation(t, pi / 4),
        TargetSpec.x_rotation(t, -pi / 4),
        TargetSpec.z_rotation(t, 15 * pi / 4),
        TargetSpec.zz_rotation(c, -pi / 4),
        TargetSpec.z_rotation(c, pi / 4),
        TargetSpec.z_rotation(t, pi / 4),
        TargetSpec.z_rotation(t, pi / 2),
        TargetSpec.z_rotation(t, pi / 4),
        TargetSpec.x_rotation(t, -pi / 4),
        TargetSpec.z_rotation(t, 15 * pi / 4),
    )


def cnot_factor_product(n: int = 2, control: int = 1) -> Unitary:
    """Analytic matrix product of the eleven CNOT factors (oracle).

    Multiplies the factor unitaries directly, without durations, schedules
    or refocusing; equals :func:`embedded_cnot` up to a global phase.
    """
    u = np.eye(2**n, dtype=complex)
    for spec in cnot_factor_specs(control):
        u = spec.embedded_unitary(n) @ u
    return Unitary(u)


def cnot_matrix() -> np.ndarray:
    """Canonical CNOT with control on site 1 (most significant bit)."""
    return np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    )


def embedded_cnot(n: int, control: int) -> np.ndarray:
    """CNOT on adjacent sites (control, control+1), identity elsewhere."""
    if not 1 <= control <= n - 1:
        raise ValueError(f"control must lie in 1..{n - 1}, got {control}")
    u = np.kron(np.eye(2 ** (control - 1)), cnot_matrix())
    return np.kron(u, np.eye(2 ** (n - control - 1)))


def cnot_schedule(
    chain: ChainSpec,
    control: int = 1,
    pulses: str = "ideal",
    gamma_max: float = DEFAULT_GAMMA_MAX,
) -> Schedule:
    """Two-cell CNOT as a concatenation of the eleven factor sub-schedules.

    z factors become refocused z rotations, the zz factor a bare coupling
    evolution, and x factors direct drive pulses on the target cell.  The
    compiled unitary matches :func:`cnot_matrix` up to a global phase.
    """
    if chain.n != 2 or control != 1:
        raise ValueError("the bare CNOT is defined on 2 cells with control = 1")
    _require_mode(pulses)
    segments: list = []
    for spec in cnot_factor_specs(control):
        if spec.kind == "z":
            sub = refocused_z_rotation_schedule(
                chain, spec.active_sites[0], spec.angle, pulses, gamma_max
            )
            segments.extend(sub.segments)
        elif spec.kind == "zz":
            segments.extend(zz_rotation_schedule(chain, 1, spec.angle).segments)
        else:
            segments.append(
                _x_pulse_segment(chain, spec.active_sites[0], spec.angle, pulses, gamma_max)
            )
    return Schedule(chain, tuple(segments))


def icnot_schedule(
    chain: ChainSpec,
    control: int,
    pulses: str = "ideal",
    gamma_max: float = DEFAULT_GAMMA_MAX,
) -> Schedule:
    """CNOT on adjacent cells of an N-cell line, all other cells decoupled.

    Every factor of the CNOT sequence is wrapped in spectator refocusing
    via :func:`decoupled_schedule` (two half evolutions, two pulse
    phases), so the compiled unitary equals :func:`embedded_cnot` up to a
    global phase while the spectator cells are held at identity.
    """
    if not 1 <= control <= chain.n - 1:
        raise ValueError(f"control must lie in 1..{chain.n - 1}, got {control}")
    _require_mode(pulses)
    segments: list = []
    for spec in cnot_factor_specs(control):
        segments.extend(decoupled_schedule(chain, spec, pulses, gamma_max).segments)
    return Schedule(chain, tuple(segments))
