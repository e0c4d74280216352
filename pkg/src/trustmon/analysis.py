"""Scenario analysis bundle shared by the CLI and the HTTP service.

One builder runs the whole pipeline (matrices, equilibria, boundary,
region, optimum) and one serializer turns it into the machine document,
so command-line output and API responses agree field for field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equilibrium import NashReport, PureProfile, equilibrium_report
from .game import (
    HUMAN_ACTIONS,
    CostModel,
    MatrixSource,
    PayoffMatrix,
    PlanRole,
    TrustGame,
    build_game,
    expected_game,
)
from .region import (
    EmptyTrustRegionError,
    MonitoringStrategy,
    OptimalMonitoringResult,
    TrustBoundary,
    TrustRegion,
    compute_boundary,
    optimal_monitoring,
    region_vertices,
    shifted_boundary,
)
from .scenario import Scenario


@dataclass(frozen=True)
class AnalysisBundle:
    """Everything the front ends show for one scenario, built in one pass."""

    scenario: Scenario
    game: TrustGame
    expected: PayoffMatrix
    nash: NashReport
    boundary: TrustBoundary
    region: TrustRegion
    optimum: OptimalMonitoringResult | None
    epsilon: float


def build_analysis(
    scenario: Scenario,
    boundary_source: MatrixSource = MatrixSource.CONSTRAINING,
    epsilon: float = 0.0,
) -> AnalysisBundle:
    """Run the full pipeline on a loaded scenario.

    The optimum is ``None`` when the (possibly margin-tightened) region is
    empty, i.e. no monitoring strategy deters the robot.
    """
    game = build_game(scenario.cost_model)
    boundary = compute_boundary(game, boundary_source)
    region = region_vertices(shifted_boundary(boundary, epsilon))
    try:
        optimum = optimal_monitoring(game, boundary, epsilon)
    except EmptyTrustRegionError:
        optimum = None
    return AnalysisBundle(
        scenario=scenario,
        game=game,
        expected=expected_game(game),
        nash=equilibrium_report(game),
        boundary=boundary,
        region=region,
        optimum=optimum,
        epsilon=epsilon,
    )


def strategy_to_dict(strategy: MonitoringStrategy) -> dict:
    return {
        "observe_plan": strategy.observe_plan,
        "observe_execution": strategy.observe_execution,
        "no_observe": strategy.no_observe,
    }


def cost_model_to_dict(model: CostModel) -> dict:
    return {
        "robot": {
            "plan_cost": {"safe": model.robot.plan_cost.safe, "risky": model.robot.plan_cost.risky},
            "exec_cost": {"safe": model.robot.exec_cost.safe, "risky": model.robot.exec_cost.risky},
            "partial_exec_cost": model.robot.partial_exec_cost,
            "goal_penalty": model.robot.goal_penalty,
        },
        "human": {
            "plan_obs_cost": {"safe": model.human.plan_obs_cost.safe, "risky": model.human.plan_obs_cost.risky},
            "exec_obs_cost": {"safe": model.human.exec_obs_cost.safe, "risky": model.human.exec_obs_cost.risky},
            "partial_exec_obs_cost": model.human.partial_exec_obs_cost,
            "plan_inconvenience": model.human.plan_inconvenience,
            "exec_inconvenience": model.human.exec_inconvenience,
            "violation_cost": model.human.violation_cost,
        },
        "robustness": model.robustness,
    }


def matrix_to_dict(matrix: PayoffMatrix) -> dict:
    def row(role: PlanRole) -> list[dict]:
        return [
            {"robot": cell.robot, "human": cell.human} for cell in matrix.row(role)
        ]

    return {
        "probably_risky": row(PlanRole.PROBABLY_RISKY),
        "safe": row(PlanRole.SAFE),
    }


def _profile_to_dict(profile: PureProfile) -> dict:
    return {"robot": profile.robot.value, "human": profile.human.value}


def nash_to_dict(report: NashReport) -> dict:
    return {
        "permissive_equilibria": [_profile_to_dict(p) for p in report.permissive_equilibria],
        "constraining_equilibria": [_profile_to_dict(p) for p in report.constraining_equilibria],
        "expected_equilibria": [_profile_to_dict(p) for p in report.expected_equilibria],
        "no_trust_condition": {
            "human_side": report.no_trust_condition.human_side,
            "robot_side": report.no_trust_condition.robot_side,
        },
        "existence_probability": report.existence_probability,
    }


def boundary_to_dict(boundary: TrustBoundary) -> dict:
    return {
        "source": boundary.source.value,
        "no_observe_coef": boundary.no_observe_coef,
        "observe_execution_coef": boundary.observe_execution_coef,
        "constant": boundary.constant,
        "degenerate": boundary.degenerate,
    }


def region_to_dict(region: TrustRegion) -> dict:
    return {
        "empty": region.empty,
        "full": region.full,
        "vertices": [strategy_to_dict(v) for v in region.vertices],
    }


def optimum_to_dict(optimum: OptimalMonitoringResult | None) -> dict | None:
    if optimum is None:
        return None
    return {
        "strategy": strategy_to_dict(optimum.strategy),
        "human_expected_utility": optimum.human_expected_utility,
        "binding_vertex": optimum.binding_vertex,
    }


def bundle_to_dict(bundle: AnalysisBundle) -> dict:
    return {
        "scenario": bundle.scenario.document,
        "cost_model": cost_model_to_dict(bundle.scenario.cost_model),
        "actions": [action.value for action in HUMAN_ACTIONS],
        "matrices": {
            "permissive": matrix_to_dict(bundle.game.permissive),
            "constraining": matrix_to_dict(bundle.game.constraining),
            "expected": matrix_to_dict(bundle.expected),
        },
        "nash": nash_to_dict(bundle.nash),
        "boundary": boundary_to_dict(bundle.boundary),
        "epsilon": bundle.epsilon,
        "region": region_to_dict(bundle.region),
        "optimum": optimum_to_dict(bundle.optimum),
    }


def region_data_dict(
    bundle: AnalysisBundle, resolution: int = 100
) -> dict:
    """Plot-ready region data: boundary samples in the (qN, qE) unit
    square, region vertices, and the two pure observation strategies."""
    boundary = shifted_boundary(bundle.boundary, bundle.epsilon)
    samples = _boundary_samples(boundary, resolution)
    return {
        "boundary": boundary_to_dict(bundle.boundary),
        "samples": samples,
        "vertices": [strategy_to_dict(v) for v in bundle.region.vertices],
        "reference_strategies": [
            {"name": "always_observe_plan", "no_observe": 0.0, "observe_execution": 0.0},
            {"name": "always_observe_execution", "no_observe": 0.0, "observe_execution": 1.0},
        ],
        "optimum": optimum_to_dict(bundle.optimum),
    }


def _boundary_samples(boundary: TrustBoundary, resolution: int) -> list[dict]:
    """Sample the boundary line inside the (qN, qE) unit square.

    Samples are monotone in qN; an empty list means the line misses the
    square (or there is no line at all).
    """
    a = boundary.no_observe_coef
    b = boundary.observe_execution_coef
    c = boundary.constant
    if resolution < 2 or (a == 0.0 and b == 0.0):
        return []

    if b == 0.0:
        # Vertical line qN = -c/a: sample along qE instead.
        q_n = -c / a
        if not 0.0 <= q_n <= 1.0:
            return []
        step = 1.0 / (resolution - 1)
        return [
            {"no_observe": q_n, "observe_execution": i * step}
            for i in range(resolution)
        ]

    def q_e(q_n: float) -> float:
        return -(a * q_n + c) / b

    if a == 0.0:
        lo, hi = (0.0, 1.0) if 0.0 <= q_e(0.0) <= 1.0 else (1.0, 0.0)
    else:
        # qE(qN) is affine: it stays within [0, 1] for qN between the
        # crossings of qE = 0 and qE = 1.
        at_zero = -c / a
        at_one = -(b + c) / a
        lo = max(0.0, min(at_zero, at_one))
        hi = min(1.0, max(at_zero, at_one))

    if hi < lo:
        return []
    step = (hi - lo) / (resolution - 1)
    return [
        {"no_observe": lo + i * step, "observe_execution": q_e(lo + i * step)}
        for i in range(resolution)
    ]
