"""Trust boundary and trust region over the supervisor's mixed strategies.

A mixed monitoring strategy is a point of the 2-simplex over the three
monitoring actions.  Writing qE for the observe-execution weight and qN
for the no-observe weight, the robot keeps the safe plan exactly when

    a * qN + b * qE + c < 0

where (a, b, c) come from the robot's payoffs in the chosen matrix.  The
closed version of that half-plane, intersected with the simplex, is the
trust region; its vertices suffice to optimize any linear monitoring-cost
objective over it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .game import (
    HumanAction,
    MatrixSource,
    PlanRole,
    TrustGame,
    matrix_for,
)

SIMPLEX_TOL = 1e-12
BOUNDARY_TOL = 1e-9


class InvalidStrategyError(ValueError):
    """Raised for weights that do not form a point of the simplex."""


class EmptyTrustRegionError(ValueError):
    """Raised when no monitoring strategy deters the robot."""


@dataclass(frozen=True)
class MonitoringStrategy:
    """The supervisor's mixed strategy over the three monitoring actions."""

    observe_plan: float
    observe_execution: float
    no_observe: float

    def __post_init__(self) -> None:
        parts = (self.observe_plan, self.observe_execution, self.no_observe)
        if any(not math.isfinite(p) for p in parts):
            raise InvalidStrategyError(f"non-finite strategy weights {parts}")
        if any(p < 0.0 for p in parts):
            raise InvalidStrategyError(f"negative strategy weight in {parts}")
        if abs(sum(parts) - 1.0) > SIMPLEX_TOL:
            raise InvalidStrategyError(
                f"strategy weights {parts} sum to {sum(parts)!r}, not 1"
            )

    def weight(self, action: HumanAction) -> float:
        if action is HumanAction.OBSERVE_PLAN:
            return self.observe_plan
        if action is HumanAction.OBSERVE_EXECUTION:
            return self.observe_execution
        return self.no_observe

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.observe_plan, self.observe_execution, self.no_observe)

    @classmethod
    def pure(cls, action: HumanAction) -> "MonitoringStrategy":
        return cls(
            observe_plan=1.0 if action is HumanAction.OBSERVE_PLAN else 0.0,
            observe_execution=1.0 if action is HumanAction.OBSERVE_EXECUTION else 0.0,
            no_observe=1.0 if action is HumanAction.NO_OBSERVE else 0.0,
        )

    @classmethod
    def from_weights(cls, weights) -> "MonitoringStrategy":
        ws = [float(w) for w in weights]
        if len(ws) != 3:
            raise InvalidStrategyError(f"expected 3 weights, got {len(ws)}")
        return cls(*ws)

    @classmethod
    def parse(cls, text: str) -> "MonitoringStrategy":
        """Parse a comma-separated triple like ``"0.4,0.1,0.5"``."""
        try:
            ws = [float(part) for part in text.split(",")]
        except ValueError as exc:
            raise InvalidStrategyError(f"unparseable strategy {text!r}") from exc
        return cls.from_weights(ws)


@dataclass(frozen=True)
class TrustBoundary:
    """Coefficients of the half-plane keeping the robot on the safe plan.

    The robot strictly prefers the safe plan where ``value(q) < 0`` and is
    indifferent on the line ``value(q) = 0``.  ``degenerate`` marks the case
    where the two robot rows coincide for every strategy (all three
    coefficients zero).
    """

    no_observe_coef: float
    observe_execution_coef: float
    constant: float
    source: MatrixSource
    degenerate: bool = False

    def value(self, strategy: MonitoringStrategy) -> float:
        return (
            self.no_observe_coef * strategy.no_observe
            + self.observe_execution_coef * strategy.observe_execution
            + self.constant
        )

    def value_at(self, no_observe: float, observe_execution: float) -> float:
        return (
            self.no_observe_coef * no_observe
            + self.observe_execution_coef * observe_execution
            + self.constant
        )


@dataclass(frozen=True)
class TrustRegion:
    """Closed trust region: boundary half-plane intersected with the simplex."""

    boundary: TrustBoundary
    vertices: tuple[MonitoringStrategy, ...]
    empty: bool
    full: bool


@dataclass(frozen=True)
class OptimalMonitoringResult:
    """Cheapest deterring strategy and its expected cost to the supervisor."""

    strategy: MonitoringStrategy
    human_expected_utility: float
    binding_vertex: bool


def compute_boundary(
    game: TrustGame, source: MatrixSource = MatrixSource.CONSTRAINING
) -> TrustBoundary:
    """Rearrange the robot's safe-vs-risky comparison into half-plane form.

    With U_r(col) the robot's risky-row payoff and U_s its constant
    safe-row payoff in the chosen matrix, the safe plan wins exactly when
    a*qN + b*qE + c < 0 for

        a = U_r(no_observe)        - U_r(observe_plan)
        b = U_r(observe_execution) - U_r(observe_plan)
        c = U_r(observe_plan)      - U_s

    Coefficients are reported raw; callers compare regions, not triples.
    """
    matrix = matrix_for(game, source)
    risky = matrix.robot_payoffs(PlanRole.PROBABLY_RISKY)
    safe = matrix.robot_payoffs(PlanRole.SAFE)

    a = risky[2] - risky[0]
    b = risky[1] - risky[0]
    c = risky[0] - safe[0]
    degenerate = a == 0.0 and b == 0.0 and c == 0.0
    return TrustBoundary(
        no_observe_coef=a,
        observe_execution_coef=b,
        constant=c,
        source=source,
        degenerate=degenerate,
    )


def contains(
    region: TrustRegion,
    strategy: MonitoringStrategy,
    closed: bool = True,
    tol: float = BOUNDARY_TOL,
) -> bool:
    """Membership test: strict inequality open, within ``tol`` closed."""
    v = region.boundary.value(strategy)
    return v <= tol if closed else v < 0.0


# Simplex corners in (qE, qN) coordinates, i.e. the three pure strategies.
_CORNERS = (
    (0.0, 0.0),  # observe plan
    (1.0, 0.0),  # observe execution
    (0.0, 1.0),  # no observe
)
_EDGES = ((0, 1), (0, 2), (1, 2))


def _to_strategy(q_e: float, q_n: float) -> MonitoringStrategy:
    q_p = 1.0 - q_e - q_n
    if -SIMPLEX_TOL < q_p < 0.0:
        q_p = 0.0
    return MonitoringStrategy(
        observe_plan=q_p, observe_execution=q_e, no_observe=q_n
    )


def region_vertices(boundary: TrustBoundary) -> TrustRegion:
    """Enumerate the extreme points of the closed trust region.

    The region is a half-plane cut of a triangle, so its vertices are the
    simplex corners satisfying the closed inequality plus the boundary
    line's crossings of the simplex edges; near-duplicates are merged.
    Vertices come back in convex-polygon order in the (qN, qE) plane.
    """
    values = [boundary.value_at(q_n, q_e) for q_e, q_n in _CORNERS]

    points: list[tuple[float, float]] = [
        corner for corner, v in zip(_CORNERS, values) if v <= BOUNDARY_TOL
    ]
    for i, j in _EDGES:
        vi, vj = values[i], values[j]
        if (vi < 0.0 < vj) or (vj < 0.0 < vi):
            t = vi / (vi - vj)
            pi, pj = _CORNERS[i], _CORNERS[j]
            points.append((pi[0] + t * (pj[0] - pi[0]), pi[1] + t * (pj[1] - pi[1])))

    merged: list[tuple[float, float]] = []
    for p in points:
        if all(math.dist(p, q) > BOUNDARY_TOL for q in merged):
            merged.append(p)

    if len(merged) > 2:
        cx = sum(p[0] for p in merged) / len(merged)
        cy = sum(p[1] for p in merged) / len(merged)
        merged.sort(key=lambda p: math.atan2(p[0] - cx, p[1] - cy))

    vertices = tuple(_to_strategy(q_e, q_n) for q_e, q_n in merged)
    return TrustRegion(
        boundary=boundary,
        vertices=vertices,
        empty=not vertices,
        full=all(v <= BOUNDARY_TOL for v in values),
    )


def shifted_boundary(boundary: TrustBoundary, epsilon: float) -> TrustBoundary:
    """Tighten the region by a safety margin: value(q) <= -epsilon."""
    if epsilon == 0.0:
        return boundary
    return replace(boundary, constant=boundary.constant + epsilon)


def optimal_monitoring(
    game: TrustGame,
    boundary: TrustBoundary,
    epsilon: float = 0.0,
) -> OptimalMonitoringResult:
    """Cheapest monitoring strategy that still keeps the robot deterred.

    Maximizes the supervisor's expected utility against the safe plan,
    -(qP * plan_obs_cost.safe + qE * exec_obs_cost.safe), over the closed
    region (optionally tightened by ``epsilon``).  The objective is linear
    so an optimal vertex exists; ties break toward larger no-observe
    weight, then larger observe-execution weight.

    Raises:
        EmptyTrustRegionError: when no strategy in the simplex deters the
            robot.
    """
    effective = shifted_boundary(boundary, epsilon)
    region = region_vertices(effective)
    if region.empty:
        raise EmptyTrustRegionError(
            "no monitoring strategy deters the robot for this cost model"
        )

    human = game.cost_model.human

    def utility(q: MonitoringStrategy) -> float:
        return -(
            q.observe_plan * human.plan_obs_cost.safe
            + q.observe_execution * human.exec_obs_cost.safe
        )

    best = max(
        region.vertices,
        key=lambda q: (utility(q), q.no_observe, q.observe_execution),
    )
    return OptimalMonitoringResult(
        strategy=best,
        human_expected_utility=utility(best),
        binding_vertex=abs(effective.value(best)) <= BOUNDARY_TOL,
    )
