"""cyberevo: evolutionary dynamics of cyber attack and defence strategies.

A two-population game between attackers (Attack / NoAttack) and defenders
(Defence / NoDefence):

- :mod:`cyberevo.game`: parameters, payoff matrix, fines, fitness, welfare;
- :mod:`cyberevo.dynamics`: the two-frequency selection field and a
  fixed-step integrator on the unit square;
- :mod:`cyberevo.equilibria`: fixed points, Jacobians, eigenvalues, and
  stability classification;
- :mod:`cyberevo.ensemble`: seeded random-game ensembles and aggregates;
- :mod:`cyberevo.abm`: an independent finite-population simulation;
- :mod:`cyberevo.phaseplot`: deterministic SVG phase portraits;
- :mod:`cyberevo.cli`: the ``cyberevo`` command.
"""

from ._version import __version__
from .abm import AbmConfig, AbmResult, simulate
from .dynamics import (
    FieldValue,
    PopulationState,
    Trajectory,
    batch_final_states,
    field_coefficients,
    field_grid,
    integrate,
    replicator_field,
)
from .ensemble import (
    EnsembleSummary,
    GameRecord,
    SamplerConfig,
    WelfareStats,
    correlation_matrix,
    fines_study,
    parameter_impact,
    run_ensemble,
    sample_game,
    v_frequency_curves,
    welfare_analytics,
)
from .equilibria import (
    Classification,
    EigenPair,
    EquilibriumKind,
    EquilibriumReport,
    Jacobian2,
    analyze_equilibria,
    classify,
    eigenvalues,
    interior_equilibrium,
    jacobian,
    stable_set,
)
from .errors import ConfigError, IntegrationError, ParameterError
from .game import (
    STRATEGY_PAIRS,
    ZERO_FINES,
    AttackerMove,
    DefenderMove,
    FineScenario,
    FitnessProfile,
    GameParams,
    PayoffMatrix,
    StrategyPair,
    build_payoff_matrix,
    fitness_profile,
    social_welfare,
)
from .phaseplot import render_phase_svg

__all__ = [
    "__version__",
    "AbmConfig",
    "AbmResult",
    "AttackerMove",
    "Classification",
    "ConfigError",
    "DefenderMove",
    "EigenPair",
    "EnsembleSummary",
    "EquilibriumKind",
    "EquilibriumReport",
    "FieldValue",
    "FineScenario",
    "FitnessProfile",
    "GameParams",
    "GameRecord",
    "IntegrationError",
    "Jacobian2",
    "ParameterError",
    "PayoffMatrix",
    "PopulationState",
    "STRATEGY_PAIRS",
    "SamplerConfig",
    "StrategyPair",
    "Trajectory",
    "WelfareStats",
    "ZERO_FINES",
    "analyze_equilibria",
    "batch_final_states",
    "build_payoff_matrix",
    "classify",
    "correlation_matrix",
    "eigenvalues",
    "field_coefficients",
    "field_grid",
    "fines_study",
    "fitness_profile",
    "integrate",
    "interior_equilibrium",
    "jacobian",
    "parameter_impact",
    "render_phase_svg",
    "replicator_field",
    "run_ensemble",
    "sample_game",
    "simulate",
    "social_welfare",
    "stable_set",
    "v_frequency_curves",
    "welfare_analytics",
]
