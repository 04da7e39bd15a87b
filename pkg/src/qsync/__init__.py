"""Synchronization diagnostics for driven dissipative two- and three-level systems.

The package is organized bottom-up:

* :mod:`qsync.states` - parameters, Bloch vectors, density-matrix checks;
* :mod:`qsync.liouville` - dense Lindblad superoperators, stationary
  states, fixed-step propagation;
* :mod:`qsync.twolevel` - closed forms for the driven two-level system:
  stationary Bloch vector, undriven stationary circle, weak-drive response;
* :mod:`qsync.phasespace` - Husimi function, the phase distribution S(phi)
  and its peak, Arnold-tongue sweeps;
* :mod:`qsync.spin1` - the three-level extension with incoherent raising
  and lowering, including a published stationary formula kept verbatim for
  comparison against the superoperator nullspace;
* :mod:`qsync.sweeps` / :mod:`qsync.cli` - deterministic tables behind the
  ``qsync`` command line.
"""

from ._version import __version__
from .states import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    SIGMA_PLUS,
    SIGMA_MINUS,
    HERMITICITY_TOL,
    TRACE_TOL,
    POSITIVITY_TOL,
    BLOCH_NORM_TOL,
    DegenerateModelError,
    SystemParams,
    BlochVector3,
    as_bloch,
    StateDiagnostics,
    density_from_bloch,
    bloch_from_density,
    validate_state,
)
from .liouville import (
    JumpChannel,
    Liouvillian,
    Trajectory,
    NonUniqueSteadyStateError,
    IntegrationError,
    vectorize,
    devectorize,
    build_liouvillian,
    lindblad_rhs,
    steady_state,
    evolve,
    time_step_for_rates,
)
from .twolevel import (
    DEFORMATION_THRESHOLD,
    driven_hamiltonian,
    dissipative_channels,
    tls_liouvillian,
    bloch_ode_rhs,
    steady_state_closed_form,
    rotate_to_lab_frame,
    LimitCycleCircle,
    limit_cycle_circle,
    ExpansionCoeffs,
    expansion_coeffs,
    deformation_parameter,
    default_time_step,
)
from .phasespace import (
    SpinCoherentState,
    coherent_state,
    husimi_q,
    QSurface,
    q_surface,
    sync_measure,
    SyncMaximum,
    max_sync,
    ArnoldTongue,
    arnold_tongue,
)
from .spin1 import (
    S_PLUS,
    S_MINUS,
    Spin1Params,
    GellmannVector8,
    gellmann_to_density,
    density_to_gellmann,
    spin1_liouvillian,
    spin1_steady_oracle,
    spin1_paper_formula,
    Spin1FormulaComparison,
    spin1_formula_comparison,
    Spin1LimitCycleReport,
    spin1_limit_cycle_report,
)
from .sweeps import (
    ConfigError,
    RunConfig,
    ResultTable,
    run_steady,
    run_tongue,
    run_smeasure,
    run_qsurface,
    run_evolve,
    run_spin1,
)

__all__ = [
    "__version__",
    # states
    "SIGMA_X", "SIGMA_Y", "SIGMA_Z", "SIGMA_PLUS", "SIGMA_MINUS",
    "HERMITICITY_TOL", "TRACE_TOL", "POSITIVITY_TOL", "BLOCH_NORM_TOL",
    "DegenerateModelError", "SystemParams", "BlochVector3", "as_bloch",
    "StateDiagnostics", "density_from_bloch", "bloch_from_density",
    "validate_state",
    # liouville
    "JumpChannel", "Liouvillian", "Trajectory", "NonUniqueSteadyStateError",
    "IntegrationError", "vectorize", "devectorize", "build_liouvillian",
    "lindblad_rhs", "steady_state", "evolve", "time_step_for_rates",
    # twolevel
    "DEFORMATION_THRESHOLD", "driven_hamiltonian", "dissipative_channels",
    "tls_liouvillian", "bloch_ode_rhs", "steady_state_closed_form",
    "rotate_to_lab_frame", "LimitCycleCircle", "limit_cycle_circle",
    "ExpansionCoeffs", "expansion_coeffs", "deformation_parameter",
    "default_time_step",
    # phasespace
    "SpinCoherentState", "coherent_state", "husimi_q", "QSurface",
    "q_surface", "sync_measure", "SyncMaximum", "max_sync", "ArnoldTongue",
    "arnold_tongue",
    # spin1
    "S_PLUS", "S_MINUS", "Spin1Params", "GellmannVector8",
    "gellmann_to_density", "density_to_gellmann", "spin1_liouvillian",
    "spin1_steady_oracle", "spin1_paper_formula", "Spin1FormulaComparison",
    "spin1_formula_comparison", "Spin1LimitCycleReport",
    "spin1_limit_cycle_report",
    # sweeps
    "ConfigError", "RunConfig", "ResultTable", "run_steady", "run_tongue",
    "run_smeasure", "run_qsurface", "run_evolve", "run_spin1",
]
