"""Shared independent oracles for the test suite."""

import numpy as np


def expm_taylor(m, terms=60):
    """Brute-force matrix exponential: scaled 60-term power series, squared back."""
    m = np.asarray(m, dtype=complex)
    one_norm = np.abs(m).sum(axis=0).max()
    squarings = max(0, int(np.ceil(np.log2(one_norm)))) if one_norm > 1 else 0
    a = m / (2**squarings)
    acc = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ a / k
        acc = acc + term
    for _ in range(squarings):
        acc = acc @ acc
    return acc


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def random_unitary(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
