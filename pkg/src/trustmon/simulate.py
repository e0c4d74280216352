"""Supervision-trial simulator.

Each trial: the supervisor commits a mixed monitoring strategy, the robot
best-responds to that strategy alone (it never adapts to earlier trials),
a supervisor type and a human action are sampled, and the realized
payoffs are read off the sampled type's matrix.  One seeded generator per
session, with a fixed sampling order (type first, then action), makes
replays bit-exact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .game import (
    HUMAN_ACTIONS,
    HumanAction,
    MatrixSource,
    PlanRole,
    SupervisorType,
    TrustGame,
)
from .equilibrium import best_response_robot
from .region import InvalidStrategyError, MonitoringStrategy


class TrialLimitError(RuntimeError):
    """Raised when a session is already at its trial limit."""


@dataclass(frozen=True)
class SessionConfig:
    """Per-session knobs.

    ``merged_monitoring`` accepts two-weight strategies (monitor,
    don't-monitor); the monitor weight is split between plan review and
    execution watching by ``monitor_split`` (fraction on plan review).
    ``response_source`` selects the matrix the robot best-responds on.
    """

    trial_limit: int
    merged_monitoring: bool = False
    monitor_split: float = 1.0
    response_source: MatrixSource = MatrixSource.CONSTRAINING

    def __post_init__(self) -> None:
        if self.trial_limit < 1:
            raise ValueError("trial_limit must be at least 1")
        if not 0.0 <= self.monitor_split <= 1.0:
            raise ValueError("monitor_split must lie in [0, 1]")


@dataclass(frozen=True)
class TrialRecord:
    """Everything observed in one trial."""

    index: int
    strategy: MonitoringStrategy
    robot_choice: PlanRole
    sampled_type: SupervisorType
    sampled_human_action: HumanAction
    robot_payoff: float
    human_payoff: float
    cumulative_human_payoff: float


def expand_merged(
    monitor: float, no_monitor: float, monitor_split: float = 1.0
) -> MonitoringStrategy:
    """Expand a (monitor, don't-monitor) pair into a full strategy."""
    if monitor < 0 or no_monitor < 0 or abs(monitor + no_monitor - 1.0) > 1e-12:
        raise InvalidStrategyError(
            f"merged weights ({monitor}, {no_monitor}) are not a probability pair"
        )
    return MonitoringStrategy(
        observe_plan=monitor * monitor_split,
        observe_execution=monitor * (1.0 - monitor_split),
        no_observe=no_monitor,
    )


@dataclass
class Session:
    """An ordered run of trials against one game; single-writer.

    Trials mutate the session and must be applied sequentially; distinct
    sessions are independent.
    """

    game: TrustGame
    config: SessionConfig
    seed: int
    session_id: str = "session"
    trials: list[TrialRecord] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._rng = random.Random(self.seed)
        self._cumulative = 0.0

    def strategy_from_weights(self, weights: Sequence[float]) -> MonitoringStrategy:
        """Interpret raw posted weights under this session's config."""
        if self.config.merged_monitoring and len(weights) == 2:
            return expand_merged(
                float(weights[0]), float(weights[1]), self.config.monitor_split
            )
        return MonitoringStrategy.from_weights(weights)

    def run_trial(self, strategy: MonitoringStrategy) -> TrialRecord:
        """Play one trial and append its record.

        The robot's choice is a function of this trial's strategy only.

        Raises:
            TrialLimitError: when the session already holds
                ``config.trial_limit`` trials.
        """
        if len(self.trials) >= self.config.trial_limit:
            raise TrialLimitError(
                f"session {self.session_id} is at its limit of "
                f"{self.config.trial_limit} trials"
            )

        robot_choice = best_response_robot(
            self.game, strategy, self.config.response_source
        )
        sampled_type = self._sample_type()
        action = self._sample_action(strategy)

        cell = self.game.matrix(sampled_type).cell(robot_choice, action)
        self._cumulative += cell.human
        record = TrialRecord(
            index=len(self.trials) + 1,
            strategy=strategy,
            robot_choice=robot_choice,
            sampled_type=sampled_type,
            sampled_human_action=action,
            robot_payoff=cell.robot,
            human_payoff=cell.human,
            cumulative_human_payoff=self._cumulative,
        )
        self.trials.append(record)
        return record

    def _sample_type(self) -> SupervisorType:
        if self._rng.random() < self.game.cost_model.robustness:
            return SupervisorType.PERMISSIVE
        return SupervisorType.CONSTRAINING

    def _sample_action(self, strategy: MonitoringStrategy) -> HumanAction:
        u = self._rng.random()
        acc = 0.0
        for action in HUMAN_ACTIONS[:-1]:
            acc += strategy.weight(action)
            if u < acc:
                return action
        return HUMAN_ACTIONS[-1]


def replay_session(
    game: TrustGame,
    config: SessionConfig,
    seed: int,
    strategies: Iterable[MonitoringStrategy],
    session_id: str = "replay",
) -> Session:
    """Re-run a session from its seed and committed strategies."""
    session = Session(game=game, config=config, seed=seed, session_id=session_id)
    for strategy in strategies:
        session.run_trial(strategy)
    return session


@dataclass(frozen=True)
class SessionSummary:
    """Aggregates over a session's trials."""

    trial_count: int
    mean_human_payoff: float
    variance_human_payoff: float
    cumulative_human_payoff: float
    strategies: tuple[MonitoringStrategy, ...]
    distance_to_optimal: tuple[float, ...] | None


def session_summary(
    session: Session, optimal_strategy: MonitoringStrategy | None = None
) -> SessionSummary:
    """Mean and population variance of the supervisor's payoffs, plus the
    distance of each committed strategy to the optimal one (when known).

    Raises:
        ValueError: on a session with no trials.
    """
    if not session.trials:
        raise ValueError("session has no trials to summarize")
    payoffs = [t.human_payoff for t in session.trials]
    mean = sum(payoffs) / len(payoffs)
    variance = sum((p - mean) ** 2 for p in payoffs) / len(payoffs)
    strategies = tuple(t.strategy for t in session.trials)
    distances = None
    if optimal_strategy is not None:
        distances = tuple(
            math.dist(s.as_tuple(), optimal_strategy.as_tuple()) for s in strategies
        )
    return SessionSummary(
        trial_count=len(payoffs),
        mean_human_payoff=mean,
        variance_human_payoff=variance,
        cumulative_human_payoff=session.trials[-1].cumulative_human_payoff,
        strategies=strategies,
        distance_to_optimal=distances,
    )


def monte_carlo_value(
    game: TrustGame,
    strategy: MonitoringStrategy,
    n: int,
    seed: int,
    source: MatrixSource = MatrixSource.CONSTRAINING,
) -> float:
    """Mean robot payoff over ``n`` independent trials at a fixed strategy.

    Serves as the stochastic oracle for the boundary comparison: inside
    the trust region this converges to the constant safe-plan payoff.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    r = game.cost_model.robustness
    robot_choice = best_response_robot(game, strategy, source)
    weights = strategy.as_tuple()

    total = 0.0
    for _ in range(n):
        type_ = (
            SupervisorType.PERMISSIVE
            if rng.random() < r
            else SupervisorType.CONSTRAINING
        )
        u = rng.random()
        if u < weights[0]:
            action = HumanAction.OBSERVE_PLAN
        elif u < weights[0] + weights[1]:
            action = HumanAction.OBSERVE_EXECUTION
        else:
            action = HumanAction.NO_OBSERVE
        total += game.matrix(type_).cell(robot_choice, action).robot
    return total / n
