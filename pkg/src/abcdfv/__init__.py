"""Finite-volume solvers and verification harness for the periodic 1D
abcd-Boussinesq systems."""

from .energy import EnergyKind, energy, energy_error, select
from .experiments import (
    COLLISION_PRESETS,
    LONGTIME_PRESETS,
    CollisionSummary,
    ConvergenceReport,
    ConvergenceRow,
    LongtimeResult,
    RunPreset,
    SimulationResult,
    WaveTrack,
    consistency_residual,
    run_collision,
    run_convergence,
    run_linear_conservation,
    run_longtime,
    run_simulation,
)
from .grid import Grid, GridFunction
from .params import AbcdParams, Regime, sgn
from .schemes import (
    AdaptiveCFL,
    BlowUpDetected,
    CFLViolation,
    FixedDt,
    RusanovConfig,
    SchemeConfig,
    SimState,
    compute_dt,
    step,
    step_bd_zero,
    step_linear,
    step_theta,
)
from .spectral import CoupledSystemSpec, solve_coupled, solve_helmholtz
from .waves import (
    CellAverageConfig,
    TravelingWaveSpec,
    cell_average_initial,
    evaluate,
    make_spec,
    reference_state,
)

__all__ = [
    "AbcdParams",
    "AdaptiveCFL",
    "BlowUpDetected",
    "CFLViolation",
    "COLLISION_PRESETS",
    "CellAverageConfig",
    "CollisionSummary",
    "ConvergenceReport",
    "ConvergenceRow",
    "CoupledSystemSpec",
    "EnergyKind",
    "FixedDt",
    "Grid",
    "GridFunction",
    "LONGTIME_PRESETS",
    "LongtimeResult",
    "Regime",
    "RunPreset",
    "RusanovConfig",
    "SchemeConfig",
    "SimState",
    "SimulationResult",
    "TravelingWaveSpec",
    "WaveTrack",
    "cell_average_initial",
    "compute_dt",
    "consistency_residual",
    "energy",
    "energy_error",
    "evaluate",
    "make_spec",
    "reference_state",
    "run_collision",
    "run_convergence",
    "run_linear_conservation",
    "run_longtime",
    "run_simulation",
    "select",
    "sgn",
    "solve_coupled",
    "solve_helmholtz",
    "step",
    "step_bd_zero",
    "step_linear",
    "step_theta",
]
