import random

import pytest

import trustmon as tm


def delivery_cost_model() -> tm.CostModel:
    """The delivery-robot cost model, written out explicitly."""
    return tm.CostModel(
        robot=tm.RobotCosts(
            plan_cost=tm.ByPlan(safe=3.8, risky=3.54),
            exec_cost=tm.ByPlan(safe=14.0, risky=10.0),
            partial_exec_cost=3.0,
            goal_penalty=20.0,
        ),
        human=tm.HumanCosts(
            plan_obs_cost=tm.ByPlan(safe=0.95, risky=0.885),
            exec_obs_cost=tm.ByPlan(safe=8.0, risky=4.0),
            partial_exec_obs_cost=1.5,
            plan_inconvenience=0.95,
            exec_inconvenience=8.0,
            violation_cost=20.0,
        ),
        robustness=0.5,
    )


def zero_cost_model(robustness: float = 1.0) -> tm.CostModel:
    return tm.CostModel(
        robot=tm.RobotCosts(
            plan_cost=tm.ByPlan(safe=0.0, risky=0.0),
            exec_cost=tm.ByPlan(safe=0.0, risky=0.0),
            partial_exec_cost=0.0,
            goal_penalty=0.0,
        ),
        human=tm.HumanCosts(
            plan_obs_cost=tm.ByPlan(safe=0.0, risky=0.0),
            exec_obs_cost=tm.ByPlan(safe=0.0, risky=0.0),
            partial_exec_obs_cost=0.0,
            plan_inconvenience=0.0,
            exec_inconvenience=0.0,
            violation_cost=0.0,
        ),
        robustness=robustness,
    )


def random_cost_model(rng: random.Random, high_robustness: bool = False) -> tm.CostModel:
    """A cost model satisfying every ordering rule by construction."""
    plan_safe = rng.uniform(0.5, 10.0)
    plan_risky = rng.uniform(0.0, plan_safe)
    exec_safe = rng.uniform(1.0, 20.0)
    exec_risky = rng.uniform(0.0, exec_safe)
    partial = rng.uniform(0.0, exec_risky)
    goal_penalty = rng.uniform(0.0, 40.0)

    plan_obs_risky = rng.uniform(0.01, 5.0)
    plan_obs_safe = rng.uniform(0.01, 5.0)
    exec_obs_risky = plan_obs_risky + rng.uniform(0.01, 8.0)
    exec_obs_safe = rng.uniform(0.01, 12.0)
    partial_obs = plan_obs_risky + rng.uniform(0.01, 6.0)
    plan_inc = rng.uniform(0.0, 4.0)
    exec_inc = plan_inc + rng.uniform(0.01, 6.0)
    violation = max(plan_obs_risky + plan_inc, partial_obs + exec_inc) + rng.uniform(
        0.01, 10.0
    )
    robustness = rng.uniform(0.9, 1.0) if high_robustness else rng.uniform(0.05, 1.0)

    return tm.CostModel(
        robot=tm.RobotCosts(
            plan_cost=tm.ByPlan(safe=plan_safe, risky=plan_risky),
            exec_cost=tm.ByPlan(safe=exec_safe, risky=exec_risky),
            partial_exec_cost=partial,
            goal_penalty=goal_penalty,
        ),
        human=tm.HumanCosts(
            plan_obs_cost=tm.ByPlan(safe=plan_obs_safe, risky=plan_obs_risky),
            exec_obs_cost=tm.ByPlan(safe=exec_obs_safe, risky=exec_obs_risky),
            partial_exec_obs_cost=partial_obs,
            plan_inconvenience=plan_inc,
            exec_inconvenience=exec_inc,
            violation_cost=violation,
        ),
        robustness=robustness,
    )


@pytest.fixture
def delivery_model() -> tm.CostModel:
    return delivery_cost_model()


@pytest.fixture
def delivery_game(delivery_model) -> tm.TrustGame:
    return tm.build_game(delivery_model)


@pytest.fixture
def delivery_scenario() -> tm.Scenario:
    return tm.load_scenario(tm.delivery_scenario_path())
