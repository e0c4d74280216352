"""Pure-strategy equilibrium analysis for the monitoring game.

Brute-force best-response checks over the 2x3 bimatrix, the closed-form
no-trust condition on the expected game, and the robot's best response to
a mixed monitoring strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .game import (
    HUMAN_ACTIONS,
    CostModel,
    HumanAction,
    MatrixSource,
    PayoffMatrix,
    PlanRole,
    SupervisorType,
    TrustGame,
    expected_game,
    matrix_for,
)
from .region import MonitoringStrategy


@dataclass(frozen=True)
class PureProfile:
    """One pure-strategy pair (robot plan, human action)."""

    robot: PlanRole
    human: HumanAction


class NoTrustCondition(NamedTuple):
    """Closed-form check that trusting the robot is mutually stable.

    ``human_side``: not observing beats reviewing the plan for the
    supervisor, in expectation over types.  ``robot_side``: the risky plan
    beats the safe one for the robot even under plan review.  Both true
    means (risky, no-observe) is an equilibrium of the expected game.
    """

    human_side: bool
    robot_side: bool


@dataclass(frozen=True)
class NashReport:
    """Equilibrium survey: per-type, expected game, and the no-trust check.

    ``existence_probability`` is the prior mass of supervisor types whose
    matrix admits at least one pure equilibrium.
    """

    permissive_equilibria: tuple[PureProfile, ...]
    constraining_equilibria: tuple[PureProfile, ...]
    expected_equilibria: tuple[PureProfile, ...]
    no_trust_condition: NoTrustCondition
    existence_probability: float

    def per_type(self, type_: SupervisorType) -> tuple[PureProfile, ...]:
        if type_ is SupervisorType.PERMISSIVE:
            return self.permissive_equilibria
        return self.constraining_equilibria


def pure_nash(matrix: PayoffMatrix) -> list[PureProfile]:
    """All cells where neither player gains by a unilateral deviation.

    Best responses are weak (>=), so ties admit multiple equilibria.
    """
    out: list[PureProfile] = []
    for role in (PlanRole.PROBABLY_RISKY, PlanRole.SAFE):
        other = (
            PlanRole.SAFE if role is PlanRole.PROBABLY_RISKY else PlanRole.PROBABLY_RISKY
        )
        row_best = max(matrix.human_payoffs(role))
        for action in HUMAN_ACTIONS:
            cell = matrix.cell(role, action)
            if cell.robot < matrix.cell(other, action).robot:
                continue
            if cell.human < row_best:
                continue
            out.append(PureProfile(robot=role, human=action))
    return out


def check_no_trust_condition(model: CostModel) -> NoTrustCondition:
    """Evaluate both sides of the no-trust check on the raw costs."""
    r = model.robustness
    h, b = model.human, model.robot
    human_side = (1.0 - r) * h.violation_cost < h.plan_obs_cost.risky + (
        1.0 - r
    ) * h.plan_inconvenience
    robot_side = (
        b.plan_cost.risky + (1.0 - r) * b.goal_penalty + r * b.exec_cost.risky
        < b.plan_cost.safe + b.exec_cost.safe
    )
    return NoTrustCondition(human_side=human_side, robot_side=robot_side)


def best_response_robot(
    game: TrustGame,
    strategy: MonitoringStrategy,
    source: MatrixSource = MatrixSource.CONSTRAINING,
) -> PlanRole:
    """The robot's best plan against a fixed mixed monitoring strategy.

    Expected utilities are compared on the selected matrix; exact ties go
    to the safe plan.
    """
    matrix = matrix_for(game, source)
    weights = strategy.as_tuple()

    def value(role: PlanRole) -> float:
        payoffs = matrix.robot_payoffs(role)
        return sum(w * p for w, p in zip(weights, payoffs))

    if value(PlanRole.SAFE) >= value(PlanRole.PROBABLY_RISKY):
        return PlanRole.SAFE
    return PlanRole.PROBABLY_RISKY


def equilibrium_report(game: TrustGame) -> NashReport:
    """Survey pure equilibria per type and in expectation.

    The per-type search operationalizes the two-type reading of the game;
    the no-trust condition is the closed-form counterpart on the expected
    game.  Both are reported because they can disagree under ties.
    """
    r = game.cost_model.robustness
    permissive = tuple(pure_nash(game.permissive))
    constraining = tuple(pure_nash(game.constraining))
    expected = tuple(pure_nash(expected_game(game)))

    existence = 0.0
    if permissive:
        existence += r
    if constraining:
        existence += 1.0 - r

    return NashReport(
        permissive_equilibria=permissive,
        constraining_equilibria=constraining,
        expected_equilibria=expected,
        no_trust_condition=check_no_trust_condition(game.cost_model),
        existence_probability=existence,
    )
