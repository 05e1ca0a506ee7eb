"""Finite-spectrum rounding of unitaries onto exact roots of unity."""

import numpy as np
import pytest

from posfactor import rng as prng
from posfactor.factorlab import finite_spectrum_adjust
from posfactor.matcore import normal_eig, operator_norm


def _finite_spectrum_unitary(g, n, distinct):
    phases = g.uniform(0.0, 1.0, size=distinct)
    labels = g.integers(0, distinct, size=n)
    vals = np.exp(2j * np.pi * phases[labels])
    q = prng.haar_unitary(g, n)
    return (q * vals) @ q.conj().T


def test_two_phase_example():
    w = np.diag(np.exp(2j * np.pi * np.array([0.3, 0.8])))
    adj = finite_spectrum_adjust(w)
    assert adj.orders == (1, 1)
    assert np.allclose(adj.alphas, (0.7, 0.2), atol=1e-12)
    assert np.allclose(adj.adjusted, np.eye(2), atol=1e-12)


def test_repeated_eigenvalue_rounds_to_group_root():
    w = np.diag([1j, 1j, -1.0])
    adj = finite_spectrum_adjust(w)
    assert sorted(adj.orders) == [1, 2]
    for val, order in zip(adj.adjusted_eigenvalues(), adj.orders):
        assert abs(val**order - 1.0) <= 1e-12


def test_distance_bound_and_exact_roots():
    for i in range(200):
        g = prng.stream(i, 50)
        n = int(g.integers(2, 7))
        distinct = int(g.integers(1, n + 1))
        w = _finite_spectrum_unitary(g, n, distinct)
        adj = finite_spectrum_adjust(w)
        dist = operator_norm(adj.adjusted - w)
        assert dist <= 2 * np.pi / min(adj.orders) + 1e-12
        for val, order in zip(adj.adjusted_eigenvalues(), adj.orders):
            assert abs(val**order - 1.0) <= 1e-12


def test_alphas_lie_in_the_least_residue_window():
    for i in range(50):
        g = prng.stream(i, 51)
        w = _finite_spectrum_unitary(g, 5, 3)
        adj = finite_spectrum_adjust(w)
        for alpha, order in zip(adj.alphas, adj.orders):
            assert -1e-15 <= alpha <= 1.0 / order + 1e-15


def test_adjusted_matrix_is_unitary():
    g = prng.stream(400, 52)
    w = _finite_spectrum_unitary(g, 6, 4)
    adj = finite_spectrum_adjust(w)
    out = adj.adjusted
    assert operator_norm(out.conj().T @ out - np.eye(6)) <= 1e-12


def test_projections_resolve_identity():
    g = prng.stream(401, 53)
    w = _finite_spectrum_unitary(g, 5, 2)
    adj = finite_spectrum_adjust(w)
    total = np.zeros((5, 5), dtype=complex)
    for proj in adj.projections:
        assert operator_norm(proj @ proj - proj) <= 1e-10
        total += proj
    assert operator_norm(total - np.eye(5)) <= 1e-10


def test_accepts_precomputed_spectral_data():
    g = prng.stream(402, 54)
    w = _finite_spectrum_unitary(g, 4, 2)
    spec = normal_eig(w)
    adj = finite_spectrum_adjust(w, spectral=spec)
    assert operator_norm(adj.adjusted - w) <= 2 * np.pi / min(adj.orders) + 1e-12


def test_rejects_non_unitary():
    with pytest.raises(ValueError):
        finite_spectrum_adjust(np.diag([2.0, 1.0]))


def test_rejects_inconsistent_spectral_data():
    w = np.diag([1j, -1j])
    other = normal_eig(np.diag([1.0 + 0j, -1.0]))
    with pytest.raises(ValueError):
        finite_spectrum_adjust(w, spectral=other)
