"""Core types and payoff matrices for the robot-monitoring trust game.

A worker robot picks one of two plans: a safe plan acceptable to every
candidate supervisor, or a cheaper plan that only some supervisors would
let run.  The supervising human picks one of three monitoring actions:
review the plan before execution, watch the execution, or not observe at
all.  Uncertainty about the supervisor is a two-type Bayesian prior: with
probability ``robustness`` the supervisor is permissive (the risky plan is
acceptable to them), otherwise constraining (they stop it).

All utilities are negated costs, so every payoff is <= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class PlanRole(Enum):
    """The robot's two pure strategies."""

    SAFE = "safe"
    PROBABLY_RISKY = "probably_risky"


class HumanAction(Enum):
    """The supervisor's three pure strategies, in canonical column order."""

    OBSERVE_PLAN = "observe_plan"
    OBSERVE_EXECUTION = "observe_execution"
    NO_OBSERVE = "no_observe"


class SupervisorType(Enum):
    """Bayesian type of the supervisor.

    PERMISSIVE: the risky plan is acceptable in their mental model of the
    robot (prior probability ``robustness``).  CONSTRAINING: it is not, and
    they will stop it if they catch it (probability ``1 - robustness``).
    """

    PERMISSIVE = "permissive"
    CONSTRAINING = "constraining"


class MatrixSource(Enum):
    """Which payoff matrix an analysis runs on: one type, or the mixture."""

    PERMISSIVE = "permissive"
    CONSTRAINING = "constraining"
    EXPECTED = "expected"

    @classmethod
    def parse(cls, value: "MatrixSource | SupervisorType | str") -> "MatrixSource":
        if isinstance(value, MatrixSource):
            return value
        if isinstance(value, SupervisorType):
            return cls(value.value)
        return cls(str(value).lower())


HUMAN_ACTIONS: tuple[HumanAction, ...] = (
    HumanAction.OBSERVE_PLAN,
    HumanAction.OBSERVE_EXECUTION,
    HumanAction.NO_OBSERVE,
)

PLAN_ROLES: tuple[PlanRole, ...] = (PlanRole.SAFE, PlanRole.PROBABLY_RISKY)


@dataclass(frozen=True)
class ByPlan:
    """A scalar defined per plan, e.g. a planning or execution cost."""

    safe: float
    risky: float

    def __getitem__(self, role: PlanRole) -> float:
        return self.safe if role is PlanRole.SAFE else self.risky


@dataclass(frozen=True)
class RobotCosts:
    """Robot-side nonnegative cost inputs.

    ``partial_exec_cost`` is the cost of the part of the risky plan that
    runs before a constraining supervisor stops it mid-execution.
    ``goal_penalty`` is the extra cost when the plan is stopped and the
    goal is therefore not achieved.
    """

    plan_cost: ByPlan
    exec_cost: ByPlan
    partial_exec_cost: float
    goal_penalty: float


@dataclass(frozen=True)
class HumanCosts:
    """Supervisor-side nonnegative cost inputs.

    Inconvenience and violation costs apply only against the risky plan;
    for the safe plan they are identically zero and never stored.
    """

    plan_obs_cost: ByPlan
    exec_obs_cost: ByPlan
    partial_exec_obs_cost: float
    plan_inconvenience: float
    exec_inconvenience: float
    violation_cost: float


@dataclass(frozen=True)
class CostModel:
    """All cost scalars plus the prior weight of the permissive type."""

    robot: RobotCosts
    human: HumanCosts
    robustness: float


@dataclass(frozen=True)
class Violation:
    """One failed cost-ordering rule, with both sides evaluated."""

    rule: str
    message: str
    lhs: float
    rhs: float
    fields: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.rule}: {self.message} (got {self.lhs:g} vs {self.rhs:g})"


class InvalidCostModelError(ValueError):
    """Raised when a cost model fails validation."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in violations))


# Rule identifiers, stable across releases: error reports and tests key on
# them rather than on message wording.
RULE_PLAN_COST_ORDER = "robot.plan_cost_order"
RULE_EXEC_COST_ORDER = "robot.exec_cost_order"
RULE_PARTIAL_EXEC_BOUND = "robot.partial_exec_bound"
RULE_VIOLATION_ABOVE_PLAN_STOP = "human.violation_above_plan_stop"
RULE_VIOLATION_ABOVE_EXEC_STOP = "human.violation_above_exec_stop"
RULE_EXEC_OBS_ABOVE_PLAN_OBS = "human.exec_obs_above_plan_obs"
RULE_PARTIAL_OBS_ABOVE_PLAN_OBS = "human.partial_obs_above_plan_obs"
RULE_EXEC_INCONVENIENCE_ORDER = "human.exec_inconvenience_above_plan"
RULE_ROBUSTNESS_RANGE = "robustness_range"
RULE_NONNEGATIVE = "nonnegative"


def _check_nonnegative(out: list[Violation], value: float, field: str) -> None:
    if value < 0:
        out.append(
            Violation(
                rule=RULE_NONNEGATIVE,
                message=f"{field} must be nonnegative",
                lhs=value,
                rhs=0.0,
                fields=(field,),
            )
        )


def validate_cost_model(model: CostModel) -> list[Violation]:
    """Check every cost-ordering assumption; empty list means valid.

    The ordering rules are strict inequalities compared exactly (inputs
    are user-supplied scalars, not computed quantities).
    """
    out: list[Violation] = []
    r, h = model.robot, model.human

    for value, field in (
        (r.plan_cost.safe, "robot.plan_cost.safe"),
        (r.plan_cost.risky, "robot.plan_cost.risky"),
        (r.exec_cost.safe, "robot.exec_cost.safe"),
        (r.exec_cost.risky, "robot.exec_cost.risky"),
        (r.partial_exec_cost, "robot.partial_exec_cost"),
        (r.goal_penalty, "robot.goal_penalty"),
        (h.plan_obs_cost.safe, "human.plan_obs_cost.safe"),
        (h.plan_obs_cost.risky, "human.plan_obs_cost.risky"),
        (h.exec_obs_cost.safe, "human.exec_obs_cost.safe"),
        (h.exec_obs_cost.risky, "human.exec_obs_cost.risky"),
        (h.partial_exec_obs_cost, "human.partial_exec_obs_cost"),
        (h.plan_inconvenience, "human.plan_inconvenience"),
        (h.exec_inconvenience, "human.exec_inconvenience"),
        (h.violation_cost, "human.violation_cost"),
    ):
        _check_nonnegative(out, value, field)

    if not r.plan_cost.risky <= r.plan_cost.safe:
        out.append(
            Violation(
                rule=RULE_PLAN_COST_ORDER,
                message="risky plan must not cost more to make than the safe plan",
                lhs=r.plan_cost.risky,
                rhs=r.plan_cost.safe,
                fields=("robot.plan_cost.risky", "robot.plan_cost.safe"),
            )
        )
    if not r.exec_cost.risky <= r.exec_cost.safe:
        out.append(
            Violation(
                rule=RULE_EXEC_COST_ORDER,
                message="risky plan must not cost more to execute than the safe plan",
                lhs=r.exec_cost.risky,
                rhs=r.exec_cost.safe,
                fields=("robot.exec_cost.risky", "robot.exec_cost.safe"),
            )
        )
    if not r.partial_exec_cost <= r.exec_cost.risky:
        out.append(
            Violation(
                rule=RULE_PARTIAL_EXEC_BOUND,
                message="a partially executed risky plan cannot cost more than the full one",
                lhs=r.partial_exec_cost,
                rhs=r.exec_cost.risky,
                fields=("robot.partial_exec_cost", "robot.exec_cost.risky"),
            )
        )

    if not h.violation_cost > h.plan_obs_cost.risky + h.plan_inconvenience:
        out.append(
            Violation(
                rule=RULE_VIOLATION_ABOVE_PLAN_STOP,
                message="an unnoticed violation must cost more than reviewing and rejecting the plan",
                lhs=h.violation_cost,
                rhs=h.plan_obs_cost.risky + h.plan_inconvenience,
                fields=(
                    "human.violation_cost",
                    "human.plan_obs_cost.risky",
                    "human.plan_inconvenience",
                ),
            )
        )
    if not h.violation_cost > h.partial_exec_obs_cost + h.exec_inconvenience:
        out.append(
            Violation(
                rule=RULE_VIOLATION_ABOVE_EXEC_STOP,
                message="an unnoticed violation must cost more than halting the execution",
                lhs=h.violation_cost,
                rhs=h.partial_exec_obs_cost + h.exec_inconvenience,
                fields=(
                    "human.violation_cost",
                    "human.partial_exec_obs_cost",
                    "human.exec_inconvenience",
                ),
            )
        )
    if not h.exec_obs_cost.risky > h.plan_obs_cost.risky:
        out.append(
            Violation(
                rule=RULE_EXEC_OBS_ABOVE_PLAN_OBS,
                message="watching the risky execution must cost more than reviewing the plan",
                lhs=h.exec_obs_cost.risky,
                rhs=h.plan_obs_cost.risky,
                fields=("human.exec_obs_cost.risky", "human.plan_obs_cost.risky"),
            )
        )
    if not h.partial_exec_obs_cost > h.plan_obs_cost.risky:
        out.append(
            Violation(
                rule=RULE_PARTIAL_OBS_ABOVE_PLAN_OBS,
                message="watching even a halted execution must cost more than reviewing the plan",
                lhs=h.partial_exec_obs_cost,
                rhs=h.plan_obs_cost.risky,
                fields=("human.partial_exec_obs_cost", "human.plan_obs_cost.risky"),
            )
        )
    if not h.exec_inconvenience > h.plan_inconvenience:
        out.append(
            Violation(
                rule=RULE_EXEC_INCONVENIENCE_ORDER,
                message="halting a running plan must be more inconvenient than rejecting it up front",
                lhs=h.exec_inconvenience,
                rhs=h.plan_inconvenience,
                fields=("human.exec_inconvenience", "human.plan_inconvenience"),
            )
        )

    if not 0.0 < model.robustness <= 1.0:
        out.append(
            Violation(
                rule=RULE_ROBUSTNESS_RANGE,
                message="robustness must lie in (0, 1]",
                lhs=model.robustness,
                rhs=1.0,
                fields=("robustness",),
            )
        )

    return out


@dataclass(frozen=True)
class PayoffCell:
    """Utilities (negated costs) for one pure-strategy pair."""

    robot: float
    human: float


Row = tuple[PayoffCell, PayoffCell, PayoffCell]


@dataclass(frozen=True)
class PayoffMatrix:
    """A 2x3 bimatrix; rows are the robot's plans, columns follow HUMAN_ACTIONS."""

    risky: Row
    safe: Row

    def row(self, role: PlanRole) -> Row:
        return self.safe if role is PlanRole.SAFE else self.risky

    def cell(self, role: PlanRole, action: HumanAction) -> PayoffCell:
        return self.row(role)[HUMAN_ACTIONS.index(action)]

    def robot_payoffs(self, role: PlanRole) -> tuple[float, float, float]:
        r = self.row(role)
        return (r[0].robot, r[1].robot, r[2].robot)

    def human_payoffs(self, role: PlanRole) -> tuple[float, float, float]:
        r = self.row(role)
        return (r[0].human, r[1].human, r[2].human)


@dataclass(frozen=True)
class TrustGame:
    """The validated cost model plus both per-type payoff matrices."""

    cost_model: CostModel
    permissive: PayoffMatrix
    constraining: PayoffMatrix

    def matrix(self, type_: SupervisorType) -> PayoffMatrix:
        if type_ is SupervisorType.PERMISSIVE:
            return self.permissive
        return self.constraining


def build_game(model: CostModel, check: bool = True) -> TrustGame:
    """Build both per-type payoff matrices from a cost model.

    The per-type matrices resolve the conditional penalties: the
    permissive type never stops the risky plan, so its goal penalty,
    inconvenience and violation entries are all zero and the risky plan
    executes fully.  The constraining type stops the risky plan when it
    observes: at the plan stage nothing executes (penalty but no
    execution cost), mid-execution the partial costs apply, and when not
    observing the plan runs to completion with the violation falling on
    the supervisor alone.

    ``check=False`` skips validation and builds the matrices mechanically;
    useful for degenerate games (e.g. all-zero costs) that break the
    strict ordering assumptions.

    Raises:
        InvalidCostModelError: if the cost model fails validation.
    """
    if check:
        violations = validate_cost_model(model)
        if violations:
            raise InvalidCostModelError(violations)

    r, h = model.robot, model.human
    safe_robot = -(r.plan_cost.safe + r.exec_cost.safe)
    safe_row: Row = (
        PayoffCell(robot=safe_robot, human=-h.plan_obs_cost.safe),
        PayoffCell(robot=safe_robot, human=-h.exec_obs_cost.safe),
        PayoffCell(robot=safe_robot, human=0.0),
    )

    risky_robot_full = -(r.plan_cost.risky + r.exec_cost.risky)
    permissive_risky: Row = (
        PayoffCell(robot=risky_robot_full, human=-h.plan_obs_cost.risky),
        PayoffCell(robot=risky_robot_full, human=-h.exec_obs_cost.risky),
        PayoffCell(robot=risky_robot_full, human=0.0),
    )

    constraining_risky: Row = (
        # Plan reviewed and rejected: no execution, goal not achieved.
        PayoffCell(
            robot=-(r.plan_cost.risky + r.goal_penalty),
            human=-(h.plan_obs_cost.risky + h.plan_inconvenience),
        ),
        # Execution halted midway.
        PayoffCell(
            robot=-(r.plan_cost.risky + r.partial_exec_cost + r.goal_penalty),
            human=-(h.partial_exec_obs_cost + h.exec_inconvenience),
        ),
        # Unobserved: the plan completes, the supervisor answers for it.
        PayoffCell(robot=risky_robot_full, human=-h.violation_cost),
    )

    return TrustGame(
        cost_model=model,
        permissive=PayoffMatrix(risky=permissive_risky, safe=safe_row),
        constraining=PayoffMatrix(risky=constraining_risky, safe=safe_row),
    )


def expected_game(game: TrustGame) -> PayoffMatrix:
    """Cell-wise mixture of the two type matrices under the type prior."""
    r = game.cost_model.robustness

    def mix(p: PayoffCell, c: PayoffCell) -> PayoffCell:
        return PayoffCell(
            robot=r * p.robot + (1.0 - r) * c.robot,
            human=r * p.human + (1.0 - r) * c.human,
        )

    risky = tuple(
        mix(p, c) for p, c in zip(game.permissive.risky, game.constraining.risky)
    )
    # The safe row is identical across types; keep it exact.
    return PayoffMatrix(risky=risky, safe=game.permissive.safe)  # type: ignore[arg-type]


def matrix_for(game: TrustGame, source: MatrixSource) -> PayoffMatrix:
    """The payoff matrix an analysis runs on: a type matrix or the mixture."""
    if source is MatrixSource.PERMISSIVE:
        return game.permissive
    if source is MatrixSource.CONSTRAINING:
        return game.constraining
    return expected_game(game)
