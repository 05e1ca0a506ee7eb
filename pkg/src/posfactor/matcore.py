"""Dense complex matrix kernels: spectral, polar, exp/log, block pivoting.

Every routine is pure (no mutation of inputs) and validates its preconditions
against the active tolerance pack.  Norms are operator norms (largest
singular value) throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import tolerances
from .errors import BlockNotInvertible, DeterminantObstruction, NotInvertible

__all__ = [
    "SpectralDecomposition",
    "PolarParts",
    "TracelessLog",
    "as_square_matrix",
    "operator_norm",
    "hermitian_defect",
    "hermitian_part",
    "chain_product",
    "hermitian_eig",
    "normal_eig",
    "polar_decompose",
    "matrix_exp",
    "positive_log",
    "traceless_unitary_log",
    "block_invertible_decomposition",
    "approximate_invertible",
    "matrix_to_wire",
    "matrix_from_wire",
]


# ---------------------------------------------------------------------------
# basic plumbing


def as_square_matrix(x, name: str = "matrix") -> np.ndarray:
    """Validate and return a finite square complex128 copy of ``x``."""
    a = np.array(x, dtype=complex, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError(f"{name} has non-finite entries")
    return a


def operator_norm(x: np.ndarray) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(x, 2))


def hermitian_defect(x: np.ndarray) -> float:
    """||x - x*|| in operator norm."""
    return operator_norm(x - x.conj().T)


def hermitian_part(x: np.ndarray) -> np.ndarray:
    """(x + x*) / 2 — exactly Hermitian."""
    return (x + x.conj().T) / 2.0


def _require_hermitian(x: np.ndarray, rel: float, name: str = "matrix") -> None:
    scale = operator_norm(x)
    if hermitian_defect(x) > rel * (scale if scale > 0 else 1.0):
        raise ValueError(f"{name} is not Hermitian within tolerance")


def _unitarity_defect(u: np.ndarray) -> float:
    return operator_norm(u.conj().T @ u - np.eye(u.shape[0]))


def chain_product(factors, n: int | None = None) -> np.ndarray:
    """Ordered product of a factor list under the canonical association.

    The product is evaluated as a balanced pairwise tree: neighbours are
    multiplied in place, the odd element (if any) carried to the next pass.
    This is the package-wide *definition* of a chain product — stored
    residuals and verification recompute through this same routine, so the
    two always agree.
    """
    mats = [np.asarray(f, dtype=complex) for f in factors]
    if not mats:
        if n is None:
            raise ValueError("empty factor list needs an explicit dimension")
        return np.eye(int(n), dtype=complex)
    if len(mats) == 1:
        return mats[0].copy()
    arr = np.stack(mats)
    while arr.shape[0] > 1:
        m = arr.shape[0]
        paired = np.matmul(arr[0 : m - (m % 2) : 2], arr[1::2])
        if m % 2:
            paired = np.concatenate([paired, arr[-1:]], axis=0)
        arr = paired
    return arr[0]


# ---------------------------------------------------------------------------
# spectral and polar decompositions


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues with a matching orthonormal column basis."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class PolarParts:
    """Polar factors: ``unitary @ positive`` recovers the input."""

    unitary: np.ndarray
    positive: np.ndarray


@dataclass(frozen=True)
class TracelessLog:
    """Traceless Hermitian ``a`` with ``exp(2 pi i a) = u`` and its branch shifts."""

    hermitian: np.ndarray
    branch_shifts: tuple[int, ...]


def hermitian_eig(h) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    h = as_square_matrix(h, "h")
    tol = tolerances()
    _require_hermitian(h, tol.hermitian, "h")
    w, v = np.linalg.eigh(hermitian_part(h))
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)


def normal_eig(x) -> SpectralDecomposition:
    """Eigendecomposition of a normal matrix via the complex Schur form.

    Eigenvalues are sorted by principal phase in [0, 2 pi), ties broken by
    modulus and then by Schur position, so the ordering is deterministic.
    """
    x = as_square_matrix(x, "x")
    tol = tolerances()
    t, q = scipy.linalg.schur(x, output="complex")
    w = np.diagonal(t).copy()
    off = operator_norm(t - np.diag(w))
    scale = operator_norm(x)
    if off > max(tol.reconstruction * (scale if scale > 0 else 1.0), 10 * np.finfo(float).eps * scale):
        raise ValueError("matrix is not normal within tolerance")
    phases = np.mod(np.angle(w), 2.0 * np.pi)
    order = np.lexsort((np.arange(len(w)), np.abs(w), phases))
    return SpectralDecomposition(eigenvalues=w[order], eigenvectors=q[:, order])


def polar_decompose(x) -> PolarParts:
    """Left polar decomposition x = u p with u unitary and p = (x* x)^(1/2)."""
    x = as_square_matrix(x, "x")
    u_svd, s, vh = np.linalg.svd(x)
    if s[0] == 0.0 or s[-1] <= 1e-12 * s[0]:
        raise NotInvertible("matrix is singular to working precision")
    unitary = u_svd @ vh
    positive = hermitian_part(vh.conj().T @ (s[:, None] * vh))
    return PolarParts(unitary=unitary, positive=positive)


# ---------------------------------------------------------------------------
# exponential and logarithms


def matrix_exp(x) -> np.ndarray:
    """Matrix exponential.

    Hermitian and skew-Hermitian inputs go through their spectral form (so a
    Hermitian input yields an exactly Hermitian positive definite result and
    a skew-Hermitian input a numerically unitary one); everything else falls
    back to the general Pade evaluation.
    """
    x = as_square_matrix(x, "x")
    tol = tolerances()
    scale = operator_norm(x)
    threshold = tol.hermitian * (scale if scale > 0 else 1.0)
    if hermitian_defect(x) <= threshold:
        w, v = np.linalg.eigh(hermitian_part(x))
        return hermitian_part((v * np.exp(w)) @ v.conj().T)
    if hermitian_defect(1j * x) <= threshold:  # x = i h, h Hermitian
        h = hermitian_part(-1j * x)
        w, v = np.linalg.eigh(h)
        return (v * np.exp(1j * w)) @ v.conj().T
    return scipy.linalg.expm(x)


def positive_log(p) -> np.ndarray:
    """Hermitian logarithm of a positive definite matrix."""
    p = as_square_matrix(p, "p")
    tol = tolerances()
    _require_hermitian(p, tol.hermitian, "p")
    w, v = np.linalg.eigh(hermitian_part(p))
    if w[-1] <= 0 or w[0] <= 1e-12 * w[-1]:
        raise ValueError("matrix is not positive definite within tolerance")
    return hermitian_part((v * np.log(w)) @ v.conj().T)


def traceless_unitary_log(u) -> TracelessLog:
    """Traceless Hermitian a with exp(2 pi i a) = u, for det(u) = 1 unitaries.

    Eigenvalue phases are taken in [0, 1); their sum is an integer k (the
    winding of det u), and the k largest phases are shifted down by one to
    land the trace on zero.  Ties pick the lowest phase index.  The residual
    phase deficit (nonzero only when det u is merely close to 1) is spread
    evenly so the trace vanishes exactly.
    """
    u = as_square_matrix(u, "u")
    tol = tolerances()
    n = u.shape[0]
    if _unitarity_defect(u) > tol.unitary:
        raise ValueError("input is not unitary within tolerance")
    det = complex(np.linalg.det(u))
    if abs(det - 1.0) > tol.determinant:
        raise DeterminantObstruction(
            f"det(u) = {det:.6g} is not 1; no traceless logarithm exists"
        )
    spec = normal_eig(u)
    phases = np.mod(np.angle(spec.eigenvalues) / (2.0 * np.pi), 1.0)
    total = float(np.sum(phases))
    k = int(round(total))
    shifts = np.zeros(n, dtype=int)
    if k > 0:
        order = np.lexsort((np.arange(n), -phases))
        shifts[order[:k]] = -1
    alpha = phases + shifts
    alpha = alpha - (total - k) / n  # exact zero trace
    v = spec.eigenvectors
    a = hermitian_part((v * alpha) @ v.conj().T)
    return TracelessLog(hermitian=a, branch_shifts=tuple(int(s) for s in shifts))


# ---------------------------------------------------------------------------
# block pivoting and regularization


def block_invertible_decomposition(x, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split x into L @ M @ R with unit-triangular L, R and block-diagonal M.

    The trailing k x k block d of x must be invertible; M = diag(y, d) with
    y the pivot complement a - b d^{-1} c.
    """
    x = as_square_matrix(x, "x")
    n = x.shape[0]
    k = int(k)
    if not 1 <= k <= n:
        raise ValueError(f"block size k must lie in [1, {n}], got {k}")
    m = n - k
    a, b = x[:m, :m], x[:m, m:]
    c, d = x[m:, :m], x[m:, m:]
    sd = np.linalg.svd(d, compute_uv=False)
    if sd[0] == 0.0 or sd[-1] <= 1e-12 * sd[0]:
        raise BlockNotInvertible(f"trailing {k}x{k} block is singular to working precision")
    b_dinv = np.linalg.solve(d.conj().T, b.conj().T).conj().T  # b d^{-1}
    dinv_c = np.linalg.solve(d, c)
    left = np.eye(n, dtype=complex)
    left[:m, m:] = b_dinv
    right = np.eye(n, dtype=complex)
    right[m:, :m] = dinv_c
    middle = np.zeros((n, n), dtype=complex)
    middle[:m, :m] = a - b_dinv @ c
    middle[m:, m:] = d
    return left, middle, right


def approximate_invertible(x, eps: float) -> np.ndarray:
    """Nearest-in-spirit invertible neighbour within distance eps.

    Invertible inputs (smallest singular value above the package floor) come
    back unchanged; otherwise singular values are floored at eps/2 in the
    SVD frame.
    """
    x = as_square_matrix(x, "x")
    eps = float(eps)
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    u, s, vh = np.linalg.svd(x)
    if s[0] > 0.0 and s[-1] > 1e-12 * s[0]:
        return x
    floored = np.maximum(s, eps / 2.0)
    return (u * floored) @ vh


# ---------------------------------------------------------------------------
# wire format


def matrix_to_wire(x) -> dict:
    """JSON-ready form: {"n": n, "entries": [[re, im], ...]} in row-major order."""
    x = as_square_matrix(x, "x")
    n = x.shape[0]
    flat = x.reshape(-1)
    return {"n": n, "entries": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_wire(obj) -> np.ndarray:
    """Inverse of :func:`matrix_to_wire`, with shape/finiteness validation."""
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise ValueError("matrix object must carry 'n' and 'entries'")
    n = int(obj["n"])
    entries = obj["entries"]
    if n < 1 or len(entries) != n * n:
        raise ValueError(f"expected {n * n} entries for n = {n}, got {len(entries)}")
    flat = np.empty(n * n, dtype=complex)
    for i, pair in enumerate(entries):
        re, im = float(pair[0]), float(pair[1])
        flat[i] = complex(re, im)
    return as_square_matrix(flat.reshape(n, n), "matrix")
