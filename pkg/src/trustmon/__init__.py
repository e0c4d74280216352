"""Monitoring-strategy planner and simulator for human-supervised robots."""

from .game import (
    HUMAN_ACTIONS,
    PLAN_ROLES,
    ByPlan,
    CostModel,
    HumanAction,
    HumanCosts,
    InvalidCostModelError,
    MatrixSource,
    PayoffCell,
    PayoffMatrix,
    PlanRole,
    RobotCosts,
    SupervisorType,
    TrustGame,
    Violation,
    build_game,
    expected_game,
    matrix_for,
    validate_cost_model,
)
from .equilibrium import (
    NashReport,
    NoTrustCondition,
    PureProfile,
    best_response_robot,
    check_no_trust_condition,
    equilibrium_report,
    pure_nash,
)
from .region import (
    EmptyTrustRegionError,
    InvalidStrategyError,
    MonitoringStrategy,
    OptimalMonitoringResult,
    TrustBoundary,
    TrustRegion,
    compute_boundary,
    contains,
    optimal_monitoring,
    region_vertices,
)
from .scenario import (
    EnsembleModel,
    ModelEnsemble,
    RawPlanStats,
    Scenario,
    ScenarioFormatError,
    WeightConfig,
    delivery_scenario_path,
    derive_cost_model,
    load_scenario,
    robustness,
    serialize_scenario,
)
from .simulate import (
    Session,
    SessionConfig,
    SessionSummary,
    TrialLimitError,
    TrialRecord,
    expand_merged,
    monte_carlo_value,
    replay_session,
    session_summary,
)

__all__ = [name for name in dir() if not name.startswith("_")]
