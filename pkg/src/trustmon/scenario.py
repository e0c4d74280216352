"""Scenario files: parsing, cost derivation, and supervisor-model ensembles.

A scenario document (YAML or JSON) either states every cost explicitly or
gives raw plan statistics plus weighting factors from which the costs are
derived: planning times are max-normalized and scaled by a robot-side
weight, supervisor plan-review costs are a fixed fraction of the robot's
planning costs, and the goal penalty is a multiple of the risky execution
cost.  The permissive-type prior comes either from an inline number or
from an enumerated ensemble of candidate supervisor models.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import yaml

from .game import (
    ByPlan,
    CostModel,
    HumanCosts,
    InvalidCostModelError,
    RobotCosts,
    validate_cost_model,
)

WEIGHT_SUM_TOL = 1e-12


class ScenarioFormatError(ValueError):
    """Schema-level failure; ``errors`` lists one message per field path."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(errors))


@dataclass(frozen=True)
class EnsembleModel:
    """One candidate supervisor model and which plans it admits."""

    model_id: str
    executable_risky: bool
    executable_safe: bool = True


@dataclass(frozen=True)
class ModelEnsemble:
    """Enumerated supervisor models with optional prior weights."""

    models: tuple[EnsembleModel, ...]
    weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not self.models:
            raise ValueError("ensemble must contain at least one model")
        if any(not m.executable_safe for m in self.models):
            bad = [m.model_id for m in self.models if not m.executable_safe]
            raise ValueError(
                f"the safe plan must be executable in every model; not in {bad}"
            )
        if self.weights is not None:
            if len(self.weights) != len(self.models):
                raise ValueError("one weight per model required")
            if any(w < 0 for w in self.weights):
                raise ValueError("ensemble weights must be nonnegative")
            if abs(sum(self.weights) - 1.0) > WEIGHT_SUM_TOL:
                raise ValueError(
                    f"ensemble weights sum to {sum(self.weights)!r}, not 1"
                )


def robustness(ensemble: ModelEnsemble, require_positive: bool = True) -> float:
    """Weighted fraction of models in which the risky plan is executable.

    Uniform weights apply when none are given.  A fraction of zero means
    the risky plan is universally unacceptable; by default that is
    rejected because the game model needs a positive permissive prior.
    """
    if ensemble.weights is None:
        value = sum(1 for m in ensemble.models if m.executable_risky) / len(
            ensemble.models
        )
    else:
        value = sum(
            w for m, w in zip(ensemble.models, ensemble.weights) if m.executable_risky
        )
    if value == 0.0 and require_positive:
        raise ValueError(
            "no model in the ensemble admits the risky plan (robustness 0)"
        )
    return value


@dataclass(frozen=True)
class RawPlanStats:
    """Raw planner outputs: timings in seconds, execution in plan-cost units."""

    planning_time: ByPlan
    execution_cost: ByPlan
    partial_execution_cost: float


@dataclass(frozen=True)
class WeightConfig:
    """Factors turning raw plan statistics into a cost model.

    ``robot_plan_weight`` scales the max-normalized planning times;
    ``plan_obs_factor`` is the ratio of the supervisor's plan-review cost
    to the robot's planning cost; ``goal_penalty_factor`` expresses the
    goal penalty as a multiple of the risky execution cost.  Supervisor
    costs with no derivation recipe stay explicit.
    """

    robot_plan_weight: float
    plan_obs_factor: float
    goal_penalty_factor: float
    exec_obs_cost: ByPlan
    partial_exec_obs_cost: float
    plan_inconvenience: float
    exec_inconvenience: float
    violation_cost: float


def _normalized_plan_cost(times: ByPlan, weight: float) -> ByPlan:
    top = max(times.safe, times.risky)
    if top <= 0:
        raise ValueError("planning times must be positive")
    return ByPlan(
        safe=times.safe * weight / top,
        risky=times.risky * weight / top,
    )


def derive_cost_model(
    stats: RawPlanStats, weights: WeightConfig, robustness: float
) -> CostModel:
    """Apply the normalization recipe and validate the result.

    Raises:
        InvalidCostModelError: when the derived values break the cost
            orderings; the report carries the offending derived numbers.
    """
    plan_cost = _normalized_plan_cost(stats.planning_time, weights.robot_plan_weight)
    model = CostModel(
        robot=RobotCosts(
            plan_cost=plan_cost,
            exec_cost=stats.execution_cost,
            partial_exec_cost=stats.partial_execution_cost,
            goal_penalty=weights.goal_penalty_factor * stats.execution_cost.risky,
        ),
        human=HumanCosts(
            plan_obs_cost=ByPlan(
                safe=weights.plan_obs_factor * plan_cost.safe,
                risky=weights.plan_obs_factor * plan_cost.risky,
            ),
            exec_obs_cost=weights.exec_obs_cost,
            partial_exec_obs_cost=weights.partial_exec_obs_cost,
            plan_inconvenience=weights.plan_inconvenience,
            exec_inconvenience=weights.exec_inconvenience,
            violation_cost=weights.violation_cost,
        ),
        robustness=robustness,
    )
    violations = validate_cost_model(model)
    if violations:
        raise InvalidCostModelError(violations)
    return model


@dataclass(frozen=True)
class Scenario:
    """A loaded scenario: the final cost model plus its source document."""

    cost_model: CostModel
    ensemble: ModelEnsemble | None
    document: dict


class _Node:
    """Cursor over one mapping of the document; tracks consumed keys."""

    def __init__(self, data: Mapping[str, Any], path: str, errors: list[str]):
        self.data = data
        self.path = path
        self.errors = errors
        self.seen: set[str] = set()

    def _p(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def has(self, key: str) -> bool:
        return key in self.data

    def number(self, key: str, required: bool = False) -> float | None:
        self.seen.add(key)
        if key not in self.data:
            if required:
                self.errors.append(f"{self._p(key)}: required field missing")
            return None
        value = self.data[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.errors.append(f"{self._p(key)}: expected a number, got {value!r}")
            return None
        return float(value)

    def by_plan(self, key: str, required: bool = False) -> ByPlan | None:
        self.seen.add(key)
        if key not in self.data:
            if required:
                self.errors.append(f"{self._p(key)}: required field missing")
            return None
        value = self.data[key]
        if not isinstance(value, Mapping):
            self.errors.append(
                f"{self._p(key)}: expected a mapping with keys safe/risky"
            )
            return None
        sub = _Node(value, self._p(key), self.errors)
        safe = sub.number("safe", required=True)
        risky = sub.number("risky", required=True)
        sub.finish()
        if safe is None or risky is None:
            return None
        return ByPlan(safe=safe, risky=risky)

    def mapping(self, key: str, required: bool = False) -> "_Node | None":
        self.seen.add(key)
        if key not in self.data:
            if required:
                self.errors.append(f"{self._p(key)}: required section missing")
            return None
        value = self.data[key]
        if not isinstance(value, Mapping):
            self.errors.append(f"{self._p(key)}: expected a mapping")
            return None
        return _Node(value, self._p(key), self.errors)

    def raw(self, key: str) -> Any:
        self.seen.add(key)
        return self.data.get(key)

    def exactly_one(self, *keys: str) -> str | None:
        present = [k for k in keys if k in self.data]
        if len(present) == 1:
            return present[0]
        where = self.path or "document"
        if not present:
            self.errors.append(
                f"{where}: exactly one of {'/'.join(keys)} is required"
            )
        else:
            self.errors.append(
                f"{where}: {' and '.join(present)} are mutually exclusive"
            )
        return None

    def finish(self) -> None:
        for key in self.data:
            if key not in self.seen:
                self.errors.append(f"{self._p(key)}: unknown field")


def _parse_ensemble(node: _Node, key: str) -> ModelEnsemble | None:
    entries = node.raw(key)
    if not isinstance(entries, list) or not entries:
        node.errors.append(f"{key}: expected a non-empty list of models")
        return None
    models = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, Mapping):
            node.errors.append(f"{key}[{i}]: expected a mapping")
            return None
        sub = _Node(entry, f"{key}[{i}]", node.errors)
        model_id = sub.raw("id")
        executable = sub.raw("executable_risky")
        sub.finish()
        if not isinstance(model_id, str) or not model_id:
            node.errors.append(f"{key}[{i}].id: expected a non-empty string")
            return None
        if not isinstance(executable, bool):
            node.errors.append(f"{key}[{i}].executable_risky: expected a boolean")
            return None
        models.append(EnsembleModel(model_id=model_id, executable_risky=executable))
    return ModelEnsemble(models=tuple(models))


def load_scenario(document: str | Mapping[str, Any] | Path) -> Scenario:
    """Parse, validate, and resolve a scenario document.

    Accepts YAML/JSON text, a pre-parsed mapping, or a file path.  Every
    schema problem is collected with its field path; derived costs are
    validated against the cost-ordering rules before anything is
    returned.

    Raises:
        ScenarioFormatError: on schema violations.
        InvalidCostModelError: when the (derived) costs break an ordering
            rule.
    """
    if isinstance(document, Path):
        document = document.read_text(encoding="utf-8")
    if isinstance(document, str):
        try:
            parsed = yaml.safe_load(document)
        except yaml.YAMLError as exc:
            raise ScenarioFormatError([f"document: unparseable ({exc})"]) from exc
    else:
        parsed = document
    if not isinstance(parsed, Mapping):
        raise ScenarioFormatError(["document: expected a mapping at the top level"])

    errors: list[str] = []
    root = _Node(parsed, "", errors)

    ensemble: ModelEnsemble | None = None
    robustness_value: float | None = None
    choice = root.exactly_one("robustness", "ensemble")
    if choice == "robustness":
        robustness_value = root.number("robustness", required=True)
    elif choice == "ensemble":
        ensemble = _parse_ensemble(root, "ensemble")
    root.seen.update(("robustness", "ensemble"))

    robot = root.mapping("robot", required=True)
    plan_cost = exec_cost = None
    partial_exec = goal_penalty = None
    if robot is not None:
        plan_choice = robot.exactly_one("plan_cost", "planning_time")
        if plan_choice == "plan_cost":
            plan_cost = robot.by_plan("plan_cost", required=True)
        elif plan_choice == "planning_time":
            times = robot.by_plan("planning_time", required=True)
            weight = robot.number("plan_weight", required=True)
            if times is not None and weight is not None:
                if times.safe <= 0 or times.risky <= 0:
                    errors.append("robot.planning_time: values must be positive")
                elif weight <= 0:
                    errors.append("robot.plan_weight: must be positive")
                else:
                    plan_cost = _normalized_plan_cost(times, weight)
        robot.seen.update(("plan_cost", "planning_time", "plan_weight"))

        exec_cost = robot.by_plan("exec_cost", required=True)
        partial_exec = robot.number("partial_exec_cost", required=True)

        penalty_choice = robot.exactly_one("goal_penalty", "goal_penalty_factor")
        if penalty_choice == "goal_penalty":
            goal_penalty = robot.number("goal_penalty", required=True)
        elif penalty_choice == "goal_penalty_factor":
            factor = robot.number("goal_penalty_factor", required=True)
            if factor is not None and factor <= 0:
                errors.append("robot.goal_penalty_factor: must be positive")
            elif factor is not None and exec_cost is not None:
                goal_penalty = factor * exec_cost.risky
        robot.seen.update(("goal_penalty", "goal_penalty_factor"))
        robot.finish()

    human = root.mapping("human", required=True)
    plan_obs = exec_obs = None
    partial_obs = plan_inc = exec_inc = violation = None
    if human is not None:
        obs_choice = human.exactly_one("plan_obs_cost", "plan_obs_factor")
        if obs_choice == "plan_obs_cost":
            plan_obs = human.by_plan("plan_obs_cost", required=True)
        elif obs_choice == "plan_obs_factor":
            factor = human.number("plan_obs_factor", required=True)
            if factor is not None and factor <= 0:
                errors.append("human.plan_obs_factor: must be positive")
            elif factor is not None and plan_cost is not None:
                plan_obs = ByPlan(
                    safe=factor * plan_cost.safe, risky=factor * plan_cost.risky
                )
        human.seen.update(("plan_obs_cost", "plan_obs_factor"))

        exec_obs = human.by_plan("exec_obs_cost", required=True)
        partial_obs = human.number("partial_exec_obs_cost", required=True)
        plan_inc = human.number("plan_inconvenience", required=True)
        exec_inc = human.number("exec_inconvenience", required=True)
        violation = human.number("violation_cost", required=True)
        human.finish()

    root.finish()
    if errors:
        raise ScenarioFormatError(errors)

    if ensemble is not None:
        robustness_value = robustness(ensemble)
    assert robustness_value is not None
    assert plan_cost and exec_cost and plan_obs and exec_obs
    assert partial_exec is not None and goal_penalty is not None
    assert partial_obs is not None and plan_inc is not None
    assert exec_inc is not None and violation is not None

    model = CostModel(
        robot=RobotCosts(
            plan_cost=plan_cost,
            exec_cost=exec_cost,
            partial_exec_cost=partial_exec,
            goal_penalty=goal_penalty,
        ),
        human=HumanCosts(
            plan_obs_cost=plan_obs,
            exec_obs_cost=exec_obs,
            partial_exec_obs_cost=partial_obs,
            plan_inconvenience=plan_inc,
            exec_inconvenience=exec_inc,
            violation_cost=violation,
        ),
        robustness=robustness_value,
    )
    violations = validate_cost_model(model)
    if violations:
        raise InvalidCostModelError(violations)

    return Scenario(
        cost_model=model,
        ensemble=ensemble,
        document=copy.deepcopy(dict(parsed)),
    )


def serialize_scenario(scenario: Scenario) -> dict:
    """The normalized source document; feeding it back to load_scenario
    reproduces an equal scenario."""
    return copy.deepcopy(scenario.document)


def delivery_scenario_path() -> Path:
    """Path of the bundled delivery-robot scenario."""
    return Path(str(resources.files(__package__) / "data" / "delivery.yaml"))


def resolve_scenario_path(ref: str | Path) -> Path:
    """Resolve a CLI scenario argument: a file path or a bundled name."""
    path = Path(ref)
    if path.exists():
        return path
    bundled = Path(str(resources.files(__package__) / "data" / f"{ref}.yaml"))
    if isinstance(ref, str) and "/" not in ref and bundled.exists():
        return bundled
    return path
