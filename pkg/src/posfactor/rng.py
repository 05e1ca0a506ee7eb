"""Deterministic random sampling helpers.

Streams are derived from a 64-bit master seed with
``SeedSequence(seed, spawn_key=path)``, so every (seed, path) pair names one
reproducible PCG64 stream independent of evaluation order.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *path: int) -> np.random.Generator:
    """Generator for the sub-stream addressed by ``path`` under ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.PCG64(ss))


def complex_gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    """n x n matrix with independent standard complex Gaussian entries."""
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via phase-corrected QR of a Gaussian matrix."""
    q, r = np.linalg.qr(complex_gaussian(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def special_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar unitary twisted by a global phase so that det = 1."""
    u = haar_unitary(rng, n)
    phase = np.angle(np.linalg.det(u))
    return u * np.exp(-1j * phase / n)


def hermitian(rng: np.random.Generator, n: int, norm: float = 1.0) -> np.ndarray:
    """Random Hermitian matrix scaled to the requested operator norm."""
    g = complex_gaussian(rng, n)
    h = (g + g.conj().T) / 2.0
    scale = np.linalg.norm(h, 2)
    if scale == 0.0:
        return h
    return h * (norm / scale)


def positive_definite(rng: np.random.Generator, n: int, cond: float = 10.0) -> np.ndarray:
    """Random positive definite matrix with condition number <= cond and norm 1."""
    q = haar_unitary(rng, n)
    eigs = np.exp(rng.uniform(-np.log(cond), 0.0, size=n))
    eigs[rng.integers(0, n)] = 1.0  # pin the top so the norm is exactly 1
    p = (q * eigs) @ q.conj().T
    return (p + p.conj().T) / 2.0


def det_positive(rng: np.random.Generator, n: int, cond: float = 10.0) -> np.ndarray:
    """Random invertible matrix with real positive determinant.

    Built as U diag(s) V* with unit top singular value and cond(s) <= cond,
    then rotated by a global phase to make the determinant real positive.
    """
    u = haar_unitary(rng, n)
    v = haar_unitary(rng, n)
    s = np.exp(rng.uniform(-np.log(cond), 0.0, size=n))
    s[rng.integers(0, n)] = 1.0
    x = (u * s) @ v.conj().T
    phase = np.angle(np.linalg.det(x))
    return x * np.exp(-1j * phase / n)
