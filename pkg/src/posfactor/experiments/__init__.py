"""Experiment runners, deterministic emitters, and the command-line interface."""

from .emit import format_value, rows_to_csv, to_json, write_output
from .runners import (
    ExperimentConfig,
    SweepResult,
    SweepRow,
    run_commutator_sweep,
    run_density_check,
    run_obstruction_landscape,
    run_trotter_sweep,
)

__all__ = [
    "ExperimentConfig",
    "SweepResult",
    "SweepRow",
    "format_value",
    "rows_to_csv",
    "run_commutator_sweep",
    "run_density_check",
    "run_obstruction_landscape",
    "run_trotter_sweep",
    "to_json",
    "write_output",
]
