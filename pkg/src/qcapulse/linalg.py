"""Dense complex linear-algebra kernels for spin-chain unitaries.

Everything downstream works with explicit ``2**n x 2**n`` complex matrices:
Kronecker products, Pauli operators embedded at a chain site, Hermitian
matrix exponentials, spectral norms, and comparison of unitaries modulo a
global phase.

Conventions
-----------
Site 1 is the *leftmost* tensor factor, i.e. the most significant bit of
the computational-basis index.  ``embed_pauli(Z, 1, 2)`` is ``Z (x) I`` =
``diag(1, 1, -1, -1)``.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

__all__ = [
    "PauliAxis",
    "Unitary",
    "DimensionLimitError",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY_2",
    "MAX_KRON_DIM",
    "UNITARITY_TOL",
    "HERMITICITY_TOL",
    "as_matrix",
    "kron",
    "embed_pauli",
    "expm_skew_hermitian",
    "spectral_norm",
    "phase_distance",
]

#: Hard cap on the total dimension produced by :func:`kron` (2**14).
MAX_KRON_DIM = 2**14

#: Constructor tolerance for ||U^dag U - I|| in spectral norm.
UNITARITY_TOL = 1e-10

#: Max-entry tolerance for ||H - H^dag|| in :func:`expm_skew_hermitian`.
HERMITICITY_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

for _m in (SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2):
    _m.setflags(write=False)
del _m


class DimensionLimitError(ValueError):
    """A construction would exceed the configured dense-matrix size cap."""


class PauliAxis(Enum):
    """The three Pauli rotation axes."""

    X = "x"
    Y = "y"
    Z = "z"

    @classmethod
    def coerce(cls, value) -> "PauliAxis":
        """Accept a ``PauliAxis`` or one of the strings ``"x" | "y" | "z"``."""
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown Pauli axis {value!r}; expected x, y or z") from None

    @property
    def matrix(self) -> np.ndarray:
        """The 2x2 Pauli matrix for this axis."""
        return {PauliAxis.X: SIGMA_X, PauliAxis.Y: SIGMA_Y, PauliAxis.Z: SIGMA_Z}[self]


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Validate and return ``m`` as a square, finite complex ndarray.

    Raises
    ------
    ValueError
        If the input is not a square 2-D matrix or contains NaN/Inf.
    """
    a = np.asarray(getattr(m, "matrix", m), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"{name} must be a square 2-D matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains non-finite entries")
    return a


def kron(a, b, max_dim: int = MAX_KRON_DIM) -> np.ndarray:
    """Kronecker product ``a (x) b`` of two square complex matrices.

    Parameters
    ----------
    a, b : array_like
        Square matrices.
    max_dim : int
        Raise :class:`DimensionLimitError` if ``a.dim * b.dim`` exceeds this.
    """
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    dim = a.shape[0] * b.shape[0]
    if dim > max_dim:
        raise DimensionLimitError(
            f"kron result dimension {dim} exceeds the configured maximum {max_dim}"
        )
    return np.kron(a, b)


def embed_pauli(axis, site: int, n: int) -> np.ndarray:
    """Pauli operator at one chain site, identity elsewhere.

    Returns ``I (x) ... (x) sigma_axis (x) ... (x) I`` on ``n`` sites with
    the Pauli matrix in tensor slot ``site`` (1-based, slot 1 leftmost).
    """
    axis = PauliAxis.coerce(axis)
    if not 1 <= site <= n:
        raise ValueError(f"site {site} out of range 1..{n}")
    if 2**n > MAX_KRON_DIM:
        raise DimensionLimitError(f"2**{n} exceeds the configured maximum {MAX_KRON_DIM}")
    out = np.array([[1.0 + 0.0j]])
    for k in range(1, n + 1):
        out = np.kron(out, axis.matrix if k == site else IDENTITY_2)
    return out


class Unitary:
    """A dense unitary matrix, validated at construction.

    The wrapped array satisfies ``||U^dag U - I|| < UNITARITY_TOL`` in
    spectral norm.  Instances are immutable; ``@`` composes them.
    """

    __slots__ = ("_matrix",)

    def __init__(self, matrix, *, _checked: bool = False):
        m = as_matrix(matrix, "unitary")
        if not _checked:
            defect = spectral_norm(m.conj().T @ m - np.eye(m.shape[0]))
            if defect >= UNITARITY_TOL:
                raise ValueError(
                    f"matrix is not unitary: ||U^dag U - I|| = {defect:.3e} "
                    f">= {UNITARITY_TOL}"
                )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "_matrix", m)

    @property
    def matrix(self) -> np.ndarray:
        """The underlying read-only complex ndarray."""
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "Unitary":
        return cls(np.eye(dim, dtype=complex), _checked=True)

    def dagger(self) -> "Unitary":
        return Unitary(self._matrix.conj().T, _checked=True)

    def __matmul__(self, other) -> "Unitary":
        other_m = other.matrix if isinstance(other, Unitary) else as_matrix(other)
        return Unitary(self._matrix @ other_m)

    def __array__(self, dtype=None, copy=None):
        if dtype is not None:
            return self._matrix.astype(dtype)
        return self._matrix

    def __setattr__(self, name, value):
        raise AttributeError("Unitary is immutable")

    def __repr__(self):
        return f"Unitary(dim={self.dim})"


def expm_skew_hermitian(h, scale: float = 1.0) -> Unitary:
    """Unitary ``exp(-1j * scale * h)`` for Hermitian ``h``.

    Computed by eigendecomposition of the Hermitian input, which keeps the
    result unitary to roundoff.  Real-symmetric inputs take the faster real
    ``eigh`` path.

    Raises
    ------
    ValueError
        If ``h`` deviates from Hermiticity by more than ``HERMITICITY_TOL``
        in max-entry norm, or if ``scale`` is not finite.
    """
    h = as_matrix(h, "h")
    if not np.isfinite(scale):
        raise ValueError("scale must be finite")
    defect = np.abs(h - h.conj().T).max()
    if defect > HERMITICITY_TOL:
        raise ValueError(f"input is not Hermitian: max|H - H^dag| = {defect:.3e}")
    diag = np.diagonal(h)
    if not np.any(h - np.diag(diag)):
        return Unitary(np.diag(np.exp(-1j * scale * diag.real)), _checked=True)
    if np.abs(h.imag).max() == 0.0:
        w, v = np.linalg.eigh(h.real)
    else:
        w, v = np.linalg.eigh(h)
    u = (v * np.exp(-1j * scale * w)) @ v.conj().T
    return Unitary(u, _checked=True)


def spectral_norm(m) -> float:
    """Largest singular value of ``m``.

    For Hermitian input this equals the largest eigenvalue magnitude and
    is computed from the eigenvalues directly.
    """
    a = as_matrix(m)
    if np.abs(a - a.conj().T).max() <= 1e-13 * max(1.0, np.abs(a).max()):
        sym = a.real if np.abs(a.imag).max() == 0.0 else a
        return float(np.abs(np.linalg.eigvalsh(sym)).max())
    return float(np.linalg.norm(a, 2))


def _phase_grid_minimum(u: np.ndarray, v: np.ndarray) -> float:
    """Minimize ||u - e^{i phi} v|| over a 4096-point phi grid plus local search."""
    dim = u.shape[0]
    unitary_ish = (
        spectral_norm(u.conj().T @ u - np.eye(dim)) < 1e-8
        and spectral_norm(v.conj().T @ v - np.eye(dim)) < 1e-8
    )
    if unitary_ish:
        # ||u - e^{i phi} v|| = max_k |lambda_k - e^{i phi}| over the
        # eigenvalues of v^dag u, so each phi costs O(dim) after one eig.
        lam = np.linalg.eigvals(v.conj().T @ u)

        def objective(phi: float) -> float:
            return float(np.abs(lam - np.exp(1j * phi)).max())

    else:

        def objective(phi: float) -> float:
            return float(np.linalg.norm(u - np.exp(1j * phi) * v, 2))

    grid = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
    values = [objective(p) for p in grid]
    k = int(np.argmin(values))
    step = 2.0 * np.pi / 4096
    lo, hi = grid[k] - step, grid[k] + step
    # Golden-section refinement of the bracket down to 1e-12.
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = objective(c), objective(d)
    while b - a > 1e-12:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = objective(d)
    return min(fc, fd, values[k])


def phase_distance(u, v) -> float:
    """Spectral-norm distance between two unitaries modulo global phase.

    Returns ``||u - e^{i phi*} v||`` with ``phi* = arg(trace(v^dag u))``;
    exact zero for ``u = e^{i phi} v``.  When the trace vanishes (no
    preferred alignment) the distance is minimized directly over a dense
    phase grid with local refinement.
    """
    u = as_matrix(u, "u")
    v = as_matrix(v, "v")
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    tr = np.trace(v.conj().T @ u)
    if abs(tr) < 1e-12 * u.shape[0]:
        return _phase_grid_minimum(u, v)
    phi = np.angle(tr)
    return float(np.linalg.norm(u - np.exp(1j * phi) * v, 2))
