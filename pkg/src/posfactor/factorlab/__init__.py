"""Positive-definite factorizations, commutator splits, torus corrections."""

from .commutators import (
    hermitian_pair_split,
    shoda_commutator,
    zero_diagonal_commutators,
)
from .factorization import (
    commutator_exp_factors,
    conjugate_positive_as_two,
    direct_sum_factorization,
    matrix_to_positive_factors,
    trotter_factors,
    two_positive_split,
    unitary_to_positive_factors,
)
from .spectrum import FiniteSpectrumAdjustment, finite_spectrum_adjust
from .torus import TorusCorrection, eps_dense_correction, is_eps_dense, minimal_root_order
from .types import (
    DEFAULT_SCHEDULE,
    TRIVIAL_SCHEDULE,
    CommutatorDecomposition,
    FactorizationSchedule,
    PositiveFactorization,
    factorization_from_wire,
    factorization_to_wire,
    invariant_report,
)

__all__ = [
    "CommutatorDecomposition",
    "DEFAULT_SCHEDULE",
    "TRIVIAL_SCHEDULE",
    "FactorizationSchedule",
    "FiniteSpectrumAdjustment",
    "PositiveFactorization",
    "TorusCorrection",
    "commutator_exp_factors",
    "conjugate_positive_as_two",
    "direct_sum_factorization",
    "eps_dense_correction",
    "factorization_from_wire",
    "factorization_to_wire",
    "finite_spectrum_adjust",
    "hermitian_pair_split",
    "invariant_report",
    "is_eps_dense",
    "matrix_to_positive_factors",
    "minimal_root_order",
    "shoda_commutator",
    "trotter_factors",
    "two_positive_split",
    "unitary_to_positive_factors",
    "zero_diagonal_commutators",
]
