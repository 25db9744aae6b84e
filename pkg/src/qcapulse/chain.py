"""Hamiltonians for a line of coupled QCA cells.

A chain of ``n`` cells carries fixed nearest-neighbour kink couplings
``E_i`` (set by layout) and two per-cell control knobs: the tunnelling
energy ``gamma_i`` (transverse x field) and the bias polarization
``P_bias_i`` (longitudinal z drive, scaled by the reference energy
``E_0``).  The full Hamiltonian is

    H = - sum_i gamma_i X(i)
        - sum_i E_i Z(i) Z(i+1)
        + sum_i E_0 P_bias_i Z(i)

in natural units (hbar = 1, energies relative to ``E_0``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .linalg import DimensionLimitError, embed_pauli

__all__ = [
    "ChainSpec",
    "ControlParams",
    "ImperfectionModel",
    "max_chain_dim",
    "build_hamiltonian",
    "build_imperfect_pulse_hamiltonian",
    "ideal_pulse_generator",
    "site_energy_scale",
]

#: Default cap on the chain Hilbert-space dimension (n <= 12 cells).
DEFAULT_MAX_CHAIN_DIM = 2**12

#: Environment variable overriding the chain dimension cap.
MAX_DIM_ENV_VAR = "QCAPULSE_MAX_DIM"


def max_chain_dim() -> int:
    """Current chain dimension cap (``QCAPULSE_MAX_DIM`` overrides 2**12)."""
    raw = os.environ.get(MAX_DIM_ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_CHAIN_DIM
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_DIM_ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 2:
        raise ValueError(f"{MAX_DIM_ENV_VAR} must be at least 2, got {value}")
    return value


@dataclass(frozen=True)
class ChainSpec:
    """The physical line: cell count, couplings and energy conventions.

    Parameters
    ----------
    n : int
        Number of cells (n >= 1; n = 1 is a degenerate single cell with no
        couplings, kept for the trivial limits of the error analysis).
    couplings : tuple of float
        The ``n - 1`` kink energies ``E_i`` between cells i and i+1
        (nonnegative; zero models a switched-off bond in idealized tests).
    e0 : float
        Reference energy ``E_0`` scaling the bias drive.  Defaults to 1
        (natural units).
    hbar : float
        Kept explicit so every time formula carries its units; fixed to 1
        by default.
    """

    n: int
    couplings: tuple = ()
    e0: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"cell count must be a positive integer, got {self.n}")
        if 2**self.n > max_chain_dim():
            raise DimensionLimitError(
                f"2**{self.n} exceeds the chain dimension cap {max_chain_dim()} "
                f"(override with {MAX_DIM_ENV_VAR})"
            )
        object.__setattr__(self, "couplings", tuple(float(c) for c in self.couplings))
        if len(self.couplings) != self.n - 1:
            raise ValueError(
                f"expected {self.n - 1} couplings for {self.n} cells, "
                f"got {len(self.couplings)}"
            )
        if any(c < 0 for c in self.couplings):
            raise ValueError("couplings must be nonnegative")
        if not self.e0 > 0 or not self.hbar > 0:
            raise ValueError("e0 and hbar must be positive")

    @classmethod
    def uniform(cls, n: int, coupling: float = 1.0, e0: float = 1.0) -> "ChainSpec":
        """Chain with all kink energies equal (the common worked case)."""
        return cls(n=n, couplings=(coupling,) * (n - 1), e0=e0)

    @property
    def dim(self) -> int:
        return 2**self.n


@dataclass(frozen=True)
class ControlParams:
    """Per-cell control settings: tunnelling energies and bias polarizations."""

    gammas: tuple
    biases: tuple

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "biases", tuple(float(b) for b in self.biases))
        if len(self.gammas) != len(self.biases):
            raise ValueError("gammas and biases must have equal length")
        if any(g < 0 for g in self.gammas):
            raise ValueError("tunnelling energies must be nonnegative")
        if any(abs(b) > 1 for b in self.biases):
            raise ValueError("bias polarizations must lie in [-1, 1]")

    @classmethod
    def off(cls, n: int) -> "ControlParams":
        """All controls zero: only the fixed couplings act."""
        return cls(gammas=(0.0,) * n, biases=(0.0,) * n)

    @property
    def n(self) -> int:
        return len(self.gammas)


@dataclass(frozen=True)
class ImperfectionModel:
    """Imperfect x-pulse parameters: drive ratio, residual tunnelling, target.

    ``gamma_rel`` is the dimensionless pulse amplitude (multiplies the
    target site's energy scale ``E_j``), ``epsilon`` the dimensionless
    residual tunnelling on every other site (``eps_i = epsilon * E_i``).
    """

    gamma_rel: float
    epsilon: float
    target: int

    def __post_init__(self):
        if not self.gamma_rel > 0:
            raise ValueError("gamma_rel must be positive")
        if not 0 <= self.epsilon < self.gamma_rel:
            raise ValueError("epsilon must satisfy 0 <= epsilon < gamma_rel")
        if not isinstance(self.target, int) or self.target < 1:
            raise ValueError("target must be a site index >= 1")


def site_energy_scale(chain: ChainSpec, site: int) -> float:
    """Energy scale ``E_j`` used for the pulse on ``site``.

    Site and bond indices are conflated in the imperfect-pulse model; we
    use the coupling on the bond at the site (left-adjacent for the last
    site), i.e. ``couplings[min(site, n-1)]``.  A single-cell chain falls
    back to ``e0``.
    """
    if not 1 <= site <= chain.n:
        raise ValueError(f"site {site} out of range 1..{chain.n}")
    if chain.n == 1:
        return chain.e0
    return chain.couplings[min(site, chain.n - 1) - 1]


def _z_values(n: int) -> np.ndarray:
    """``(n, 2**n)`` array of Z eigenvalues: row k is Z(k+1) on each basis state."""
    idx = np.arange(2**n)
    return np.stack([1 - 2 * ((idx >> (n - k)) & 1) for k in range(1, n + 1)]).astype(float)


def _zz_diagonal(chain: ChainSpec) -> np.ndarray:
    """Diagonal of the always-on coupling term ``- sum_i E_i Z(i) Z(i+1)``."""
    z = _z_values(chain.n)
    diag = np.zeros(chain.dim)
    for i, e_i in enumerate(chain.couplings):
        if e_i != 0.0:
            diag -= e_i * z[i] * z[i + 1]
    return diag


def build_hamiltonian(chain: ChainSpec, ctrl: ControlParams) -> np.ndarray:
    """Full chain Hamiltonian for the given control settings.

    Returns the ``2**n x 2**n`` Hermitian matrix

        - sum gamma_i X(i) - sum E_i Z(i)Z(i+1) + sum E_0 P_bias_i Z(i).

    The Z and ZZ terms are assembled on the diagonal; each active gamma
    adds an embedded X operator.
    """
    if ctrl.n != chain.n:
        raise ValueError(f"control length {ctrl.n} does not match chain size {chain.n}")
    n = chain.n
    diag = _zz_diagonal(chain)
    z = _z_values(n)
    for i in range(n):
        if ctrl.biases[i] != 0.0:
            diag += chain.e0 * ctrl.biases[i] * z[i]
    h = np.diag(diag).astype(complex)
    for i in range(1, n + 1):
        if ctrl.gammas[i - 1] != 0.0:
            h -= ctrl.gammas[i - 1] * embed_pauli("x", i, n)
    return h


def build_imperfect_pulse_hamiltonian(chain: ChainSpec, model: ImperfectionModel) -> np.ndarray:
    """Hamiltonian of an imperfect x pulse on one site.

    The drive on the target site j has strength ``gamma_rel * E_j``; every
    other site carries the residual tunnelling ``epsilon * E_i``; the
    couplings stay on and the biases are zero:

        - gamma E_j X(j) - sum_{i != j} eps E_i X(i) - sum E_i Z(i)Z(i+1).
    """
    if model.target > chain.n:
        raise ValueError(f"target site {model.target} out of range 1..{chain.n}")
    n = chain.n
    h = np.diag(_zz_diagonal(chain)).astype(complex)
    for i in range(1, n + 1):
        if i == model.target:
            strength = model.gamma_rel * site_energy_scale(chain, i)
        else:
            strength = model.epsilon * site_energy_scale(chain, i)
        if strength != 0.0:
            h -= strength * embed_pauli("x", i, n)
    return h


def ideal_pulse_generator(chain: ChainSpec, site: int, gamma_max: float) -> np.ndarray:
    """Idealized pulse Hamiltonian ``-gamma_max * X(site)`` on ``n`` cells.

    This is the limit of the full Hamiltonian during a strong square
    tunnelling pulse, with every other term neglected.
    """
    if not 1 <= site <= chain.n:
        raise ValueError(f"site {site} out of range 1..{chain.n}")
    return -float(gamma_max) * embed_pauli("x", site, chain.n)
