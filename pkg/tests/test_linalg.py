import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcapulse.linalg import (
    HERMITICITY_TOL,
    IDENTITY_2,
    MAX_KRON_DIM,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DimensionLimitError,
    PauliAxis,
    Unitary,
    embed_pauli,
    expm_skew_hermitian,
    kron,
    phase_distance,
    spectral_norm,
)

from helpers import expm_taylor, random_hermitian, random_unitary

# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def kron_enumerated(a, b):
    """Direct definition: out[i*db+k, j*db+l] = a[i,j] * b[k,l]."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    da, db = a.shape[0], b.shape[0]
    out = np.zeros((da * db, da * db), dtype=complex)
    for i in range(da):
        for j in range(da):
            for k in range(db):
                for l in range(db):
                    out[i * db + k, j * db + l] = a[i, j] * b[k, l]
    return out


def phase_distance_grid(u, v, points=20001):
    """Brute-force min over phi of the spectral norm of u - e^{i phi} v."""
    phis = np.linspace(0.0, 2.0 * np.pi, points)
    return min(np.linalg.norm(u - np.exp(1j * p) * v, 2) for p in phis)


# ---------------------------------------------------------------------------
# kron
# ---------------------------------------------------------------------------


def test_kron_identity_sigma_x_is_block_diagonal():
    out = kron(IDENTITY_2, SIGMA_X)
    expected = np.zeros((4, 4), dtype=complex)
    expected[0:2, 0:2] = SIGMA_X
    expected[2:4, 2:4] = SIGMA_X
    assert np.array_equal(out, expected)


def test_kron_sigma_z_identity_is_diagonal():
    assert np.array_equal(kron(SIGMA_Z, IDENTITY_2), np.diag([1, 1, -1, -1]).astype(complex))


def test_kron_matches_enumeration_and_embedding():
    out = kron(SIGMA_X, SIGMA_X)
    assert np.array_equal(out, kron_enumerated(SIGMA_X, SIGMA_X))
    embedded = embed_pauli("x", 1, 2) @ embed_pauli("x", 2, 2)
    assert np.array_equal(out, embedded)


def test_kron_associativity_integer_matrices_exact():
    a = np.array([[1, 2], [3, 4]], dtype=complex)
    b = np.array([[0, 1], [1, 0]], dtype=complex)
    c = np.array([[2, 0], [0, -1]], dtype=complex)
    assert np.array_equal(kron(a, kron(b, c)), kron(kron(a, b), c))


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_kron_associativity_random(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    lhs = kron(a, kron(b, c))
    rhs = kron(kron(a, b), c)
    assert np.abs(lhs - rhs).max() < 1e-14


def test_kron_dimension_cap():
    big = np.eye(2**7, dtype=complex)
    with pytest.raises(DimensionLimitError):
        kron(big, big, max_dim=2**13)
    assert kron(big, big).shape == (2**14, 2**14)
    with pytest.raises(DimensionLimitError):
        kron(np.eye(2**8), np.eye(2**7))


def test_kron_rejects_non_square():
    with pytest.raises(ValueError):
        kron(np.ones((2, 3)), SIGMA_X)


def test_kron_rejects_non_finite():
    bad = np.array([[np.inf, 0], [0, 1]])
    with pytest.raises(ValueError):
        kron(bad, SIGMA_X)


# ---------------------------------------------------------------------------
# embed_pauli
# ---------------------------------------------------------------------------


def test_embed_site_one_is_leftmost_factor():
    assert np.array_equal(embed_pauli("z", 1, 2), np.diag([1, 1, -1, -1]).astype(complex))
    assert np.array_equal(embed_pauli("x", 2, 2), np.kron(np.eye(2), SIGMA_X))


def test_embed_zz_diagonal_by_bit_parity():
    # sites 2,3 of a 3-cell chain: eigenvalue is the product of the two
    # Z eigenvalues read off the basis-index bits
    out = embed_pauli("z", 2, 3) @ embed_pauli("z", 3, 3)
    expected = np.zeros(8)
    for idx in range(8):
        z2 = 1 - 2 * ((idx >> 1) & 1)
        z3 = 1 - 2 * (idx & 1)
        expected[idx] = z2 * z3
    assert np.array_equal(out, np.diag(expected).astype(complex))
    assert np.array_equal(np.diagonal(out).real, np.array([1, -1, -1, 1, 1, -1, -1, 1]))


def test_embed_site_out_of_range():
    with pytest.raises(ValueError):
        embed_pauli("x", 0, 2)
    with pytest.raises(ValueError):
        embed_pauli("x", 3, 2)


@pytest.mark.parametrize("axis_i,axis_j", [("x", "z"), ("z", "z"), ("y", "x")])
def test_embed_different_sites_commute(axis_i, axis_j):
    a = embed_pauli(axis_i, 1, 3)
    b = embed_pauli(axis_j, 3, 3)
    assert np.abs(a @ b - b @ a).max() < 1e-13


def test_pauli_axis_coercion():
    assert PauliAxis.coerce("X") is PauliAxis.X
    assert PauliAxis.coerce(PauliAxis.Y) is PauliAxis.Y
    assert np.array_equal(PauliAxis.Y.matrix, SIGMA_Y)
    with pytest.raises(ValueError):
        PauliAxis.coerce("w")


# ---------------------------------------------------------------------------
# expm_skew_hermitian
# ---------------------------------------------------------------------------


def test_expm_zero_scale_is_identity():
    rng = np.random.default_rng(0)
    h = random_hermitian(rng, 8)
    u = expm_skew_hermitian(h, 0.0)
    assert np.abs(u.matrix - np.eye(8)).max() < 1e-14


def test_expm_sigma_x_quarter_period():
    # e^{i pi/2 X} = i X
    u = expm_skew_hermitian(SIGMA_X, -np.pi / 2)
    assert np.abs(u.matrix - 1j * SIGMA_X).max() < 1e-14


def test_expm_matches_taylor_oracle_4x4():
    rng = np.random.default_rng(42)
    h = random_hermitian(rng, 4)
    u = expm_skew_hermitian(h, 0.37)
    assert np.abs(u.matrix - expm_taylor(-1j * 0.37 * h)).max() < 1e-12


@pytest.mark.parametrize("dim", [2, 3, 5, 8, 16])
def test_expm_matches_taylor_oracle_many(dim):
    rng = np.random.default_rng(dim)
    for _ in range(5):
        h = random_hermitian(rng, dim)
        scale = rng.uniform(-2, 2)
        u = expm_skew_hermitian(h, scale)
        assert np.abs(u.matrix - expm_taylor(-1j * scale * h)).max() < 1e-12


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_expm_group_law(seed):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, 6)
    h = h / max(1.0, spectral_norm(h))
    s, t = rng.uniform(-10, 10, size=2)
    lhs = expm_skew_hermitian(h, s).matrix @ expm_skew_hermitian(h, t).matrix
    rhs = expm_skew_hermitian(h, s + t).matrix
    assert spectral_norm(lhs - rhs) < 1e-11


def test_expm_diagonal_fast_path():
    d = np.diag([0.3, -1.2, 4.5, 0.0]).astype(complex)
    u = expm_skew_hermitian(d, 1.7)
    assert np.abs(u.matrix - np.diag(np.exp(-1.7j * np.diagonal(d)))).max() < 1e-15


def test_expm_rejects_non_hermitian():
    bad = np.array([[0, 1], [0, 0]], dtype=complex)
    with pytest.raises(ValueError):
        expm_skew_hermitian(bad, 1.0)
    # just over the tolerance
    h = SIGMA_Z + np.array([[0, 10 * HERMITICITY_TOL], [0, 0]])
    with pytest.raises(ValueError):
        expm_skew_hermitian(h, 1.0)


def test_expm_rejects_non_finite_scale():
    with pytest.raises(ValueError):
        expm_skew_hermitian(SIGMA_Z, np.inf)


# ---------------------------------------------------------------------------
# Unitary
# ---------------------------------------------------------------------------


def test_unitary_invariant_enforced():
    with pytest.raises(ValueError):
        Unitary(np.array([[1, 0], [0, 1.001]], dtype=complex))
    u = Unitary(1j * SIGMA_X)
    assert u.dim == 2
    assert spectral_norm(u.matrix.conj().T @ u.matrix - np.eye(2)) < 1e-10


def test_unitary_immutable_and_composable():
    u = Unitary(SIGMA_X.astype(complex))
    with pytest.raises(AttributeError):
        u.matrix = np.eye(2)
    assert not u.matrix.flags.writeable
    v = u @ u
    assert np.abs(v.matrix - np.eye(2)).max() < 1e-14
    assert np.abs(u.dagger().matrix - SIGMA_X).max() < 1e-14


def test_returned_unitaries_satisfy_invariant():
    rng = np.random.default_rng(3)
    for dim in (2, 4, 8):
        h = random_hermitian(rng, dim)
        u = expm_skew_hermitian(h, rng.uniform(-5, 5))
        assert spectral_norm(u.matrix.conj().T @ u.matrix - np.eye(dim)) < 1e-10


# ---------------------------------------------------------------------------
# spectral_norm
# ---------------------------------------------------------------------------


def test_spectral_norm_identity():
    assert spectral_norm(np.eye(4)) == pytest.approx(1.0, abs=1e-14)


def test_spectral_norm_scaled_pauli():
    assert spectral_norm(2 * SIGMA_Z) == pytest.approx(2.0, abs=1e-14)


def test_spectral_norm_matches_svd_on_nonnormal():
    rng = np.random.default_rng(11)
    m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    assert spectral_norm(m) == pytest.approx(np.linalg.svd(m, compute_uv=False)[0], rel=1e-12)


# ---------------------------------------------------------------------------
# phase_distance
# ---------------------------------------------------------------------------


def test_phase_distance_self_and_global_phase():
    rng = np.random.default_rng(5)
    u = random_unitary(rng, 4)
    assert phase_distance(u, u) == 0.0
    assert phase_distance(u, 1j * u) < 1e-14
    assert phase_distance(u, np.exp(0.42j) * u) < 1e-14


def test_phase_distance_identity_vs_sigma_x():
    # trace(X) = 0 forces the grid fallback; the spectral-norm minimum over
    # the phase is sqrt(2), attained between the two eigenphases 0 and pi
    d = phase_distance(np.eye(2, dtype=complex), SIGMA_X)
    assert d == pytest.approx(np.sqrt(2.0), abs=1e-9)
    assert d == pytest.approx(phase_distance_grid(np.eye(2), SIGMA_X), abs=1e-6)


def test_phase_distance_fallback_matches_grid_oracle():
    rng = np.random.default_rng(17)
    u = random_unitary(rng, 4)
    # orthogonalize the pair so the alignment trace vanishes
    v = u @ np.diag([1, 1j, -1, -1j])
    assert abs(np.trace(v.conj().T @ u)) < 1e-12
    assert phase_distance(u, v) == pytest.approx(phase_distance_grid(u, v), abs=1e-6)


def test_phase_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        phase_distance(np.eye(2), np.eye(4))


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 2**32 - 1))
def test_phase_distance_pseudometric(seed):
    rng = np.random.default_rng(seed)
    u, v, w = (random_unitary(rng, 4) for _ in range(3))
    duv, dvu = phase_distance(u, v), phase_distance(v, u)
    assert abs(duv - dvu) < 1e-10
    assert phase_distance(u, w) <= duv + phase_distance(v, w) + 1e-10
