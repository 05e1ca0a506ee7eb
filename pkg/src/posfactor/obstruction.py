"""Determinant and trace obstructions to positive-definite factorizations.

The determinant of a product of positive (semi)definite matrices is real and
nonnegative; on unitary products the summed trace-logarithms vanish.  Both
facts become checkable certificates here, and the scalar landscape routine
measures how far unimodular scalars sit from the factorizable set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .config import tolerances
from .errors import BudgetExceeded
from .factorlab.factorization import matrix_to_positive_factors
from .factorlab.types import FactorizationSchedule, PositiveFactorization, invariant_report
from .matcore import (
    as_square_matrix,
    chain_product,
    hermitian_defect,
    hermitian_part,
    operator_norm,
    positive_log,
)

__all__ = [
    "TraceFunctional",
    "DeterminantResidue",
    "TraceIdentityRecord",
    "ObstructionReport",
    "DEFAULT_BUDGET_LADDER",
    "standard_trace",
    "normalized_trace",
    "dhs_residue_of_exponential",
    "unitary_product_trace_identity",
    "det_nonneg_check",
    "scalar_obstruction_distance",
    "estimate_group_G",
    "verify_factorization",
]


DEFAULT_BUDGET_LADDER = (
    FactorizationSchedule(4, 4),
    FactorizationSchedule(8, 8),
    FactorizationSchedule(16, 16),
)


# ---------------------------------------------------------------------------
# trace functionals and the determinant residue


@dataclass(frozen=True)
class TraceFunctional:
    """Standard or normalized matrix trace with its image lattice."""

    kind: str  # "standard" | "normalized"
    n: int

    def __post_init__(self):
        if self.kind not in ("standard", "normalized"):
            raise ValueError(f"unknown trace kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")

    def value(self, m: np.ndarray) -> complex:
        m = as_square_matrix(m, "m")
        if m.shape[0] != self.n:
            raise ValueError(f"expected {self.n} x {self.n} input")
        t = complex(np.trace(m))
        return t / self.n if self.kind == "normalized" else t

    @property
    def lattice_spacing(self) -> float:
        """Spacing of the integer image lattice: 1 or 1/n."""
        return 1.0 / self.n if self.kind == "normalized" else 1.0


def standard_trace(n: int) -> TraceFunctional:
    return TraceFunctional(kind="standard", n=n)


def normalized_trace(n: int) -> TraceFunctional:
    return TraceFunctional(kind="normalized", n=n)


@dataclass(frozen=True)
class DeterminantResidue:
    """tau(c) / (2 pi i) reduced modulo the trace lattice."""

    value: float
    spacing: float
    residue: float


def dhs_residue_of_exponential(c, trace: TraceFunctional) -> DeterminantResidue:
    """Lattice residue of the determinant phase of exp(c).

    value = Re(tau(c) / (2 pi i)) — for c = 2 pi i a with a Hermitian this is
    exactly tau(a).  The residue is value mod the lattice spacing, in
    [0, spacing).
    """
    c = as_square_matrix(c, "c")
    raw = trace.value(c) / (2j * np.pi)
    value = float(raw.real)
    spacing = trace.lattice_spacing
    residue = value % spacing
    if residue >= spacing:  # float wrap at the boundary
        residue = 0.0
    return DeterminantResidue(value=value, spacing=spacing, residue=float(residue))


# ---------------------------------------------------------------------------
# product certificates


@dataclass(frozen=True)
class TraceIdentityRecord:
    """Summed trace-logs of positive factors whose product is near-unitary."""

    s: float                 # sum of tr log b_k (real)
    delta: float             # declared unitarity defect bound
    defect: float            # measured ||P* P - 1||
    bound: float             # n * delta / (2 (1 - delta)) + numerical floor
    det: complex             # determinant of the product


def unitary_product_trace_identity(factors, delta: float | None = None) -> TraceIdentityRecord:
    """Check sum tr log b_k against the unitary-product bound.

    For positive definite b_k with ||P* P - 1|| <= delta < 1 (P the ordered
    product), |sum tr log b_k| = |log|det P|| <= n/2 |log(1 - delta)|
    <= n delta / (2 (1 - delta)).  A 1e-10 absolute floor absorbs the
    trace-log roundoff as delta -> 0.  Raises when the product is farther
    from unitary than delta (delta >= 1 means no bound exists at all), or
    (numerically impossible for valid input) when the bound itself fails.
    """
    mats = [as_square_matrix(f, "factor") for f in factors]
    if not mats:
        raise ValueError("need at least one factor")
    n = mats[0].shape[0]
    logs = [positive_log(f) for f in mats]  # validates positive definiteness
    product = chain_product(mats, n)
    defect = operator_norm(product.conj().T @ product - np.eye(n))
    if delta is None:
        delta = defect
    delta = float(delta)
    if defect > delta * (1.0 + 1e-12) + 1e-15:
        raise ValueError(
            f"product is not unitary within delta: defect {defect:.3e} > {delta:.3e}"
        )
    if delta >= 1.0:
        raise ValueError(
            f"product is not unitary within any admissible delta < 1 (delta {delta:.3e})"
        )
    s = float(sum(np.trace(l).real for l in logs))
    bound = n * delta / (2.0 * (1.0 - delta)) + 1e-10
    record = TraceIdentityRecord(
        s=s, delta=delta, defect=float(defect), bound=float(bound),
        det=complex(np.linalg.det(product)),
    )
    if abs(s) > bound:
        raise ValueError(
            f"trace identity violated: |s| = {abs(s):.3e} exceeds bound {bound:.3e}"
        )
    return record


def det_nonneg_check(factors) -> tuple[bool, complex]:
    """Determinant certificate for a product of positive semidefinite factors.

    Returns (ok, det): ok when the imaginary part is negligible relative to
    |det| and the real part is not below -1e-8 times the product of factor
    norms.
    """
    tol = tolerances()
    mats = [as_square_matrix(f, "factor") for f in factors]
    if not mats:
        raise ValueError("need at least one factor")
    n = mats[0].shape[0]
    norm_product = 1.0
    for f in mats:
        scale = operator_norm(f)
        if hermitian_defect(f) > tol.hermitian * (scale if scale > 0 else 1.0):
            raise ValueError("factors must be Hermitian within tolerance")
        eigs = np.linalg.eigvalsh(hermitian_part(f))
        if eigs[0] < -tol.hermitian * max(scale, 1.0):
            raise ValueError("factors must be positive semidefinite")
        norm_product *= max(scale, 0.0)
    det = complex(np.linalg.det(chain_product(mats, n)))
    imag_ok = abs(det.imag) <= tol.determinant * abs(det)
    real_ok = det.real >= -tol.determinant * norm_product
    return bool(imag_ok and real_ok), det


# ---------------------------------------------------------------------------
# scalar obstruction landscape


@dataclass(frozen=True, eq=False)
class ObstructionReport:
    """Distance of a unimodular scalar target from the factorizable set."""

    lam: complex
    n: int
    best_distance: float
    in_group: bool
    budget: FactorizationSchedule
    ladder: tuple[tuple[FactorizationSchedule, float | None], ...] = ()


def _det_constrained_distance(lam: complex, n: int) -> float:
    """Numerical distance from lam * I to {X : det X real nonnegative}.

    Starts from the closed-form equal-phase-split candidate (feasible by
    construction) and refines with SLSQP under the determinant constraints;
    only verified-feasible iterates are reported.
    """
    eye = np.eye(n, dtype=complex)
    target = lam * eye
    theta = np.angle(lam)
    delta_star = -n * theta
    delta_star = np.angle(np.exp(1j * delta_star))  # representative in (-pi, pi]
    candidates: list[np.ndarray] = [
        np.exp(1j * delta_star / n) * target,          # spread over all eigenvalues
        lam * np.diag(np.exp(1j * delta_star * (np.arange(n) == n - 1))),  # single spin
    ]

    def unpack(z: np.ndarray) -> np.ndarray:
        return z[: n * n].reshape(n, n) + 1j * z[n * n :].reshape(n, n)

    def objective(z: np.ndarray) -> float:
        e = unpack(z) - target
        return float(np.sum(np.abs(e) ** 2))

    def det_parts(z: np.ndarray) -> complex:
        return complex(np.linalg.det(unpack(z)))

    constraints = (
        {"type": "eq", "fun": lambda z: det_parts(z).imag},
        {"type": "ineq", "fun": lambda z: det_parts(z).real},
    )
    best = np.inf
    for x0_mat in candidates:
        z0 = np.concatenate([x0_mat.real.ravel(), x0_mat.imag.ravel()])
        result = scipy.optimize.minimize(
            objective, z0, method="SLSQP", constraints=constraints,
            options={"maxiter": 200, "ftol": 1e-14},
        )
        for z in (result.x, z0):
            x_mat = unpack(np.asarray(z, dtype=float))
            det = complex(np.linalg.det(x_mat))
            feasible = abs(det.imag) <= 1e-9 * max(abs(det), 1.0) and det.real >= -1e-12
            if feasible:
                best = min(best, operator_norm(x_mat - target))
    return float(best)


def scalar_obstruction_distance(
    lam: complex, n: int, budgets=DEFAULT_BUDGET_LADDER
) -> ObstructionReport:
    """Best factorization distance for the scalar target lam * I_n.

    Scalars whose n-th power is 1 run the constructive pipeline over the
    budget ladder (budget overflows are recorded, not fatal); all others are
    measured against the determinant constraint set by the independent
    minimization oracle.
    """
    lam = complex(lam)
    n = int(n)
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if abs(abs(lam) - 1.0) > 1e-10:
        raise ValueError(f"lambda must be unimodular, got |lambda| = {abs(lam)}")
    budgets = tuple(budgets)
    if not budgets:
        raise ValueError("need at least one budget")
    tol = tolerances()
    in_group = abs(lam**n - 1.0) <= tol.reconstruction

    if not in_group:
        distance = _det_constrained_distance(lam, n)
        return ObstructionReport(
            lam=lam, n=n, best_distance=distance, in_group=False,
            budget=budgets[-1], ladder=tuple((b, None) for b in budgets),
        )

    target = lam * np.eye(n, dtype=complex)
    ladder: list[tuple[FactorizationSchedule, float | None]] = []
    best = np.inf
    used = budgets[-1]
    for sched in budgets:
        try:
            err = matrix_to_positive_factors(target, sched).error
        except BudgetExceeded:
            ladder.append((sched, None))
            continue
        ladder.append((sched, float(err)))
        used = sched
        best = min(best, float(err))
    return ObstructionReport(
        lam=lam, n=n, best_distance=float(best), in_group=True,
        budget=used, ladder=tuple(ladder),
    )


def estimate_group_G(
    n: int, grid: int | None = None, eps: float = 0.25, budgets=DEFAULT_BUDGET_LADDER
) -> list[ObstructionReport]:
    """Obstruction reports over a roots-of-unity grid, sorted by phase.

    The accepted set {lambda : best_distance < eps} estimates which scalars
    admit approximate positive factorizations; it should match the n-th
    roots of unity.
    """
    n = int(n)
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if grid is None:
        grid = 4 * n
    grid = int(grid)
    if grid < 4 * n:
        raise ValueError(f"grid must be at least 4 n = {4 * n}, got {grid}")
    reports = []
    for k in range(grid):
        lam = complex(np.exp(2j * np.pi * k / grid))
        reports.append(scalar_obstruction_distance(lam, n, budgets))
    return reports


# ---------------------------------------------------------------------------
# factorization verification


def verify_factorization(pf: PositiveFactorization) -> list[tuple[str, bool, str]]:
    """Full invariant check list for a stored factorization.

    Extends the structural checks with the trace-log certificate whenever the
    target itself is (numerically) unitary.
    """
    checks = invariant_report(pf)
    n = pf.n
    target_defect = operator_norm(pf.target.conj().T @ pf.target - np.eye(n))
    if target_defect <= 1e-6:
        product = pf.product()
        defect = operator_norm(product.conj().T @ product - np.eye(n))
        try:
            record = unitary_product_trace_identity(pf.factors, delta=defect * 1.01 + 1e-14)
            checks.append(
                (
                    "trace-identity",
                    True,
                    f"|s| = {abs(record.s):.3e} within bound {record.bound:.3e}",
                )
            )
        except ValueError as exc:
            checks.append(("trace-identity", False, str(exc)))
    return checks
