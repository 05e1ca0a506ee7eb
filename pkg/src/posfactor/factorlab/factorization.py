"""Constructive factorizations into products of positive definite matrices.

The workhorse is the commutator pipeline: a determinant-one unitary is
written as exp of a commutator, the commutator as a group-commutator limit,
and each approximant block as three positive definite factors.  A general
invertible matrix with real positive determinant prepends its polar positive
part, for a predicted count of trotter * pairs * 3 * commutator^2 + 1.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from ..config import tolerances
from ..errors import NotInvertible, DeterminantObstruction
from ..matcore import (
    as_square_matrix,
    chain_product,
    hermitian_defect,
    hermitian_part,
    matrix_exp,
    operator_norm,
    polar_decompose,
    traceless_unitary_log,
)
from .commutators import hermitian_pair_split, shoda_commutator
from .types import (
    DEFAULT_SCHEDULE,
    TRIVIAL_SCHEDULE,
    FactorizationSchedule,
    PositiveFactorization,
)

__all__ = [
    "two_positive_split",
    "conjugate_positive_as_two",
    "trotter_factors",
    "commutator_exp_factors",
    "unitary_to_positive_factors",
    "matrix_to_positive_factors",
    "direct_sum_factorization",
]


def two_positive_split(x, s) -> PositiveFactorization:
    """Split x = S D S^{-1} (D positive diagonal) into two positive factors.

    D is recovered from the witness as S^{-1} x S and must come out positive
    diagonal.  The factors are S S* and S^{-*} D S^{-1}; their product
    telescopes to S D S^{-1} = x exactly.
    """
    x = as_square_matrix(x, "x")
    s = as_square_matrix(s, "s")
    tol = tolerances()
    n = x.shape[0]
    if s.shape != x.shape:
        raise ValueError("x and s must share one shape")
    sv = np.linalg.svd(s, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= 1e-12 * sv[0]:
        raise NotInvertible("witness s is singular to working precision")
    cond = float(sv[0] / sv[-1])
    s_inv = np.linalg.inv(s)
    d = s_inv @ x @ s
    scale = max(operator_norm(x), 1.0)
    witness_tol = tol.reconstruction * scale * cond
    if hermitian_defect(d) > witness_tol:
        raise ValueError("witness s does not expose a positive form for x")
    d = hermitian_part(d)
    if np.linalg.eigvalsh(d)[0] <= 0:
        raise ValueError("witness s does not expose a positive form for x")
    f1 = hermitian_part(s @ s.conj().T)
    f2 = hermitian_part(s_inv.conj().T @ d @ s_inv)
    factors = (f1, f2)
    error = operator_norm(x - chain_product(factors, n))
    if error > tol.reconstruction * scale * cond:
        raise ValueError("witness too ill-conditioned to reach the target residual")
    return PositiveFactorization(
        target=x, factors=factors, error=float(error),
        method="two_positive_split", schedule=TRIVIAL_SCHEDULE,
    )


def conjugate_positive_as_two(v, p) -> PositiveFactorization:
    """Write v p v^{-1} as a product of two positive definite factors.

    With the polar split v = u q the factors are u (q p q) u* and u q^{-2} u*;
    their product is algebraically identical to v p v^{-1}.
    """
    v = as_square_matrix(v, "v")
    p = as_square_matrix(p, "p")
    tol = tolerances()
    if v.shape != p.shape:
        raise ValueError("v and p must have matching shapes")
    _require_positive_definite(p, "p")
    parts = polar_decompose(v)  # raises NotInvertible for singular v
    u, q = parts.unitary, parts.positive
    w, z = np.linalg.eigh(q)
    q_inv2 = (z * w**-2.0) @ z.conj().T
    f1 = hermitian_part(u @ (q @ p @ q) @ u.conj().T)
    f2 = hermitian_part(u @ q_inv2 @ u.conj().T)
    target = v @ p @ np.linalg.inv(v)
    factors = (f1, f2)
    error = operator_norm(target - chain_product(factors, v.shape[0]))
    return PositiveFactorization(
        target=target, factors=factors, error=float(error),
        method="conjugate_positive_as_two", schedule=TRIVIAL_SCHEDULE,
    )


def trotter_factors(a, b, n: int) -> list[np.ndarray]:
    """2n-factor product-formula approximation of exp(a + b).

    Returns [exp(a/n), exp(b/n)] repeated n times; the ordered product
    converges to exp(a + b) at first order in 1/n.
    """
    a = as_square_matrix(a, "a")
    b = as_square_matrix(b, "b")
    if a.shape != b.shape:
        raise ValueError("a and b must have matching shapes")
    n = int(n)
    if n < 1:
        raise ValueError("step count must be >= 1")
    ea = matrix_exp(a / n)
    eb = matrix_exp(b / n)
    return [ea, eb] * n


def _block_triple(a_step: np.ndarray, b_step: np.ndarray) -> list[np.ndarray]:
    """Three positive factors whose product is exp(-a) exp(-b) exp(a) exp(b).

    a_step/b_step are the already-divided exponents (a/n, b/n).  The group
    commutator block v e^{-b} v^{-1} e^{b} with v = e^{-a} expands through
    the polar split v = u q into (u q e^{-b} q u*)(u q^{-2} u*)(e^{b}).
    """
    v = matrix_exp(-a_step)
    p = matrix_exp(-b_step)
    e = matrix_exp(b_step)
    parts = polar_decompose(v)
    u, q = parts.unitary, parts.positive
    w, z = np.linalg.eigh(q)
    q_inv2 = (z * w**-2.0) @ z.conj().T
    f1 = hermitian_part(u @ (q @ p @ q) @ u.conj().T)
    f2 = hermitian_part(u @ q_inv2 @ u.conj().T)
    return [f1, f2, e]


def commutator_exp_factors(a, b, n: int) -> PositiveFactorization:
    """3 n^2 positive factors approximating exp([a, b]) (b Hermitian).

    The group-commutator approximant (e^{-a/n} e^{-b/n} e^{a/n} e^{b/n})^{n^2}
    converges to exp([a, b]) at first order in 1/n; each of the n^2 blocks
    contributes three positive definite factors.
    """
    a = as_square_matrix(a, "a")
    b = as_square_matrix(b, "b")
    if a.shape != b.shape:
        raise ValueError("a and b must have matching shapes")
    n = int(n)
    if n < 1:
        raise ValueError("step count must be >= 1")
    tol = tolerances()
    scale_b = operator_norm(b)
    if hermitian_defect(b) > tol.hermitian * (scale_b if scale_b > 0 else 1.0):
        raise ValueError("b must be Hermitian within tolerance")
    b = hermitian_part(b)
    target = matrix_exp(a @ b - b @ a)
    triple = _block_triple(a / n, b / n)
    factors = tuple(triple) * (n * n)
    dim = a.shape[0]
    error = operator_norm(target - chain_product(factors, dim))
    schedule = FactorizationSchedule(
        trotter_steps=1,
        commutator_steps=n,
        max_factors=max(DEFAULT_SCHEDULE.max_factors, 3 * n * n + 1),
    )
    return PositiveFactorization(
        target=target, factors=factors, error=float(error),
        method="commutator_exp", schedule=schedule,
    )


def _scaled_triple(x: np.ndarray, y: np.ndarray, trotter: int, commutator: int):
    """Block triple for exp([x, y]/trotter) with a tuned splitting scale.

    The scale s (from the deterministic grid s0 * 2^k, k in -2..2, with
    s0 = sqrt(trotter * ||x|| / ||y||)) replaces (x, y) by (x/s, s y) — the
    commutator is unchanged but the measured block error varies; the smallest
    measured error wins, ties to the smaller exponent.
    """
    t_steps = int(trotter)
    c_steps = int(commutator)
    norm_x = operator_norm(x)
    norm_y = operator_norm(y)
    piece_target = matrix_exp((x @ y - y @ x) / t_steps)
    s0 = np.sqrt(t_steps * norm_x / norm_y)
    best_err, best_triple = np.inf, None
    for k in (-2, -1, 0, 1, 2):
        s = s0 * 2.0**k
        a_step = x / (s * c_steps)
        b_step = (s * y) / (t_steps * c_steps)
        triple = _block_triple(a_step, b_step)
        block = triple[0] @ triple[1] @ triple[2]
        piece = np.linalg.matrix_power(block, c_steps * c_steps)
        err = operator_norm(piece - piece_target)
        if err < best_err:
            best_err, best_triple = err, triple
    return best_triple


def unitary_to_positive_factors(
    u, schedule: FactorizationSchedule = DEFAULT_SCHEDULE
) -> PositiveFactorization:
    """Factor a determinant-one unitary into positive definite matrices.

    Pipeline: traceless logarithm -> single-commutator witness -> Hermitian
    pair split -> product-formula stage over the scaled pairs -> three-factor
    commutator blocks.  Raises DeterminantObstruction when det(u) is not 1
    and BudgetExceeded when the predicted count overflows the schedule cap.
    """
    u = as_square_matrix(u, "u")
    n = u.shape[0]
    tlog = traceless_unitary_log(u)  # validates unitarity and determinant
    a = tlog.hermitian
    if operator_norm(a) <= 1e-13:
        factors = (np.eye(n, dtype=complex),)
        error = operator_norm(u - np.eye(n))
        return PositiveFactorization(
            target=u, factors=factors, error=float(error),
            method="unitary_commutator_pipeline", schedule=schedule,
        )
    c = 2j * np.pi * a  # skew-Hermitian, exp(c) = u
    x0, y0 = shoda_commutator(c)
    split = hermitian_pair_split(x0, y0)
    pairs = split.pairs
    schedule.require_budget(len(pairs))
    t_steps = schedule.trotter_steps
    c_steps = schedule.commutator_steps

    triples = []
    for x, y in pairs:
        x = x - (np.trace(x) / n) * np.eye(n)  # free recentering
        triples.append(_scaled_triple(x, y, t_steps, c_steps))

    block_count = c_steps * c_steps
    factors: list[np.ndarray] = []
    for _ in range(t_steps):
        for triple in triples:
            factors.extend(triple * block_count)
    factors_t = tuple(factors)
    error = operator_norm(u - chain_product(factors_t, n))
    return PositiveFactorization(
        target=u, factors=factors_t, error=float(error),
        method="unitary_commutator_pipeline", schedule=schedule,
    )


def matrix_to_positive_factors(
    x, schedule: FactorizationSchedule = DEFAULT_SCHEDULE
) -> PositiveFactorization:
    """Factor an invertible matrix with real positive determinant.

    Positive definite inputs come back as themselves (single factor, zero
    error); otherwise the polar positive part is appended to the pipeline
    factors of the unitary polar factor.
    """
    x = as_square_matrix(x, "x")
    tol = tolerances()
    n = x.shape[0]
    sv = np.linalg.svd(x, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= 1e-12 * sv[0]:
        raise NotInvertible("matrix is singular to working precision")
    scale = operator_norm(x)
    if hermitian_defect(x) <= tol.hermitian * scale:
        eigs = np.linalg.eigvalsh(hermitian_part(x))
        if eigs[-1] > 0 and eigs[0] > 1e-12 * eigs[-1]:
            return PositiveFactorization(
                target=x, factors=(x.copy(),), error=0.0,
                method="positive_definite", schedule=schedule,
            )
    det = complex(np.linalg.det(x))
    if det.real <= 0 or abs(det.imag) > tol.determinant * abs(det):
        raise DeterminantObstruction(
            f"det = {det:.6g} is not real positive; "
            "no positive-definite factorization exists"
        )
    parts = polar_decompose(x)
    unit_part = unitary_to_positive_factors(parts.unitary, schedule)
    if len(unit_part.factors) == 1 and unit_part.error <= tol.unitary:
        factors = (parts.positive,)
    else:
        factors = unit_part.factors + (parts.positive,)
    error = operator_norm(x - chain_product(factors, n))
    return PositiveFactorization(
        target=x, factors=factors, error=float(error),
        method="polar_pipeline", schedule=schedule,
    )


def direct_sum_factorization(blocks) -> PositiveFactorization:
    """Factor a block-diagonal target from factorizations of its blocks.

    Shorter factor lists are padded with identities; the combined error
    equals the worst block error up to roundoff.
    """
    blocks = list(blocks)
    if not blocks:
        raise ValueError("need at least one block")
    if len(blocks) == 1:
        return blocks[0]
    longest = max(len(b.factors) for b in blocks)
    dims = [b.n for b in blocks]
    factors = []
    for k in range(longest):
        parts = [
            b.factors[k] if k < len(b.factors) else np.eye(d, dtype=complex)
            for b, d in zip(blocks, dims)
        ]
        factors.append(scipy.linalg.block_diag(*parts).astype(complex))
    target = scipy.linalg.block_diag(*[b.target for b in blocks]).astype(complex)
    factors_t = tuple(factors)
    error = operator_norm(target - chain_product(factors_t, sum(dims)))
    return PositiveFactorization(
        target=target, factors=factors_t, error=float(error),
        method="direct_sum", schedule=blocks[0].schedule,
    )


def _require_positive_definite(p: np.ndarray, name: str) -> None:
    tol = tolerances()
    scale = operator_norm(p)
    if hermitian_defect(p) > tol.hermitian * (scale if scale > 0 else 1.0):
        raise ValueError(f"{name} must be Hermitian within tolerance")
    eigs = np.linalg.eigvalsh(hermitian_part(p))
    if eigs[0] <= 1e-12 * max(eigs[-1], 0.0) or eigs[0] <= 0:
        raise ValueError(f"{name} must be positive definite")
