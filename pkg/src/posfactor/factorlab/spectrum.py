"""Minimal rotations landing a unitary's spectrum on roots of unity.

Each distinct eigenvalue lambda_j with multiplicity N_j is advanced by the
least nonnegative phase alpha_j so that (e^{2 pi i alpha_j} lambda_j)^{N_j}
equals 1 exactly; the total movement is bounded by 2 pi / min N_j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import tolerances
from ..matcore import SpectralDecomposition, as_square_matrix, normal_eig, operator_norm

__all__ = ["FiniteSpectrumAdjustment", "finite_spectrum_adjust"]


@dataclass(frozen=True, eq=False)
class FiniteSpectrumAdjustment:
    """Grouped spectrum of a unitary with its root-of-unity correction."""

    eigenvalues: tuple[complex, ...]          # one representative per group
    projections: tuple[np.ndarray, ...]        # orthogonal, summing to identity
    orders: tuple[int, ...]                    # group multiplicities N_j
    alphas: tuple[float, ...]                  # phase advances in [0, 1/N_j]
    adjusted: np.ndarray                       # the corrected unitary

    def adjusted_eigenvalues(self) -> tuple[complex, ...]:
        return tuple(
            complex(np.exp(2j * np.pi * a) * lam)
            for a, lam in zip(self.alphas, self.eigenvalues)
        )


def _group_indices(eigenvalues: np.ndarray, tol: float) -> list[list[int]]:
    """Cluster phase-sorted unimodular eigenvalues by chordal closeness."""
    n = len(eigenvalues)
    groups: list[list[int]] = [[0]]
    for i in range(1, n):
        if abs(eigenvalues[i] - eigenvalues[groups[-1][-1]]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    # the circle wraps: the last group may continue into the first
    if len(groups) > 1 and abs(eigenvalues[groups[-1][-1]] - eigenvalues[0]) <= tol:
        groups[0] = groups.pop() + groups[0]
    return groups


def finite_spectrum_adjust(
    w, spectral: SpectralDecomposition | None = None, group_tol: float = 1e-8
) -> FiniteSpectrumAdjustment:
    """Rotate each eigenvalue group of a unitary onto an exact root of unity.

    ``spectral`` may carry a precomputed decomposition of w; otherwise one is
    derived.  Group j of size N_j at phase theta_j (in turns) advances by
    alpha_j = (ceil(N_j theta_j) - N_j theta_j) / N_j, the least nonnegative
    phase making it an exact N_j-th root of unity; hence
    ||adjusted - w|| <= 2 pi / min N_j.
    """
    w = as_square_matrix(w, "w")
    tol = tolerances()
    n = w.shape[0]
    if operator_norm(w.conj().T @ w - np.eye(n)) > tol.unitary:
        raise ValueError("input is not unitary within tolerance")
    if spectral is None:
        spectral = normal_eig(w)
    else:
        recon = spectral.reconstruct()
        if operator_norm(recon - w) > 1e2 * tol.reconstruction * max(operator_norm(w), 1.0):
            raise ValueError("provided spectral decomposition does not match w")

    lam = np.asarray(spectral.eigenvalues, dtype=complex)
    v = spectral.eigenvectors
    groups = _group_indices(lam, group_tol)

    reps: list[complex] = []
    projections: list[np.ndarray] = []
    orders: list[int] = []
    alphas: list[float] = []
    new_values = np.empty(n, dtype=complex)
    for idx in groups:
        rep = complex(lam[idx[0]])
        size = len(idx)
        theta = float(np.mod(np.angle(rep) / (2.0 * np.pi), 1.0))
        alpha = (np.ceil(size * theta) - size * theta) / size
        root = np.exp(2j * np.pi * np.ceil(size * theta) / size)
        cols = v[:, idx]
        proj = cols @ cols.conj().T
        reps.append(rep)
        projections.append((proj + proj.conj().T) / 2.0)
        orders.append(size)
        alphas.append(float(alpha))
        new_values[idx] = root
    adjusted = (v * new_values) @ v.conj().T
    return FiniteSpectrumAdjustment(
        eigenvalues=tuple(reps),
        projections=tuple(projections),
        orders=tuple(orders),
        alphas=tuple(alphas),
        adjusted=adjusted,
    )
