"""Pseudo-spectral solver for the 2D Kuramoto-Sivashinsky equation, its
scalar form, and their calmed variants, with a convergence-study harness."""

from .calming import IDENTITY, CalmingKind, DefectBound, apply_calming, calming_sup_norm, defect_bound
from .config import RunConfig
from .dynamics import (
    EquationForm,
    full_rhs,
    linear_symbol,
    nonlinear_rhs_scalar,
    nonlinear_rhs_vector,
)
from .experiments import (
    ConvergenceReport,
    ErrorSeries,
    SlopeFit,
    convergence_study,
    default_eps_sweep,
    fit_loglog_slope,
    initial_field,
    make_initial,
    run_pair,
)
from .spectral import (
    Field,
    Grid,
    build_grid,
    dealias,
    forward_transform,
    hs_norm,
    inverse_transform,
    l2_norm,
    linf_norm,
    spectral_derivative,
)
from .stepping import (
    BlowUpError,
    StepperState,
    Trajectory,
    advective_cfl_limit,
    evolve,
    ifrk4_step,
    ifrk4_update,
    init_stepper,
)
from .storage import load_snapshot, read_error_csv, write_error_csv, write_snapshot

__version__ = "0.1.0"

__all__ = [
    "BlowUpError",
    "CalmingKind",
    "ConvergenceReport",
    "DefectBound",
    "EquationForm",
    "ErrorSeries",
    "Field",
    "Grid",
    "IDENTITY",
    "RunConfig",
    "SlopeFit",
    "StepperState",
    "Trajectory",
    "advective_cfl_limit",
    "apply_calming",
    "build_grid",
    "calming_sup_norm",
    "convergence_study",
    "dealias",
    "default_eps_sweep",
    "defect_bound",
    "evolve",
    "fit_loglog_slope",
    "forward_transform",
    "full_rhs",
    "hs_norm",
    "ifrk4_step",
    "ifrk4_update",
    "init_stepper",
    "initial_field",
    "inverse_transform",
    "l2_norm",
    "linear_symbol",
    "linf_norm",
    "load_snapshot",
    "make_initial",
    "nonlinear_rhs_scalar",
    "nonlinear_rhs_vector",
    "read_error_csv",
    "run_pair",
    "spectral_derivative",
    "write_error_csv",
    "write_snapshot",
]
