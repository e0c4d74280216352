"""Acceptance gate: the delivery reference instance plus the statistical
and cross-interface guarantees, each at its pinned tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.
"""

import functools
import json
import math
import random
import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

import trustmon as tm
from trustmon.cli import main as cli_main
from trustmon.service import create_app

from conftest import random_cost_model

RISKY = tm.PlanRole.PROBABLY_RISKY
SAFE = tm.PlanRole.SAFE


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"ACCEPTANCE {name}: FAIL")
                raise
            print(f"ACCEPTANCE {name}: PASS")

        return wrapper

    return decorate


@pytest.fixture(scope="module")
def scenario():
    return tm.load_scenario(tm.delivery_scenario_path())


@pytest.fixture(scope="module")
def game(scenario):
    return tm.build_game(scenario.cost_model)


@criterion("matrix reproduction")
def test_matrix_reproduction(game):
    tol = 1e-9
    want_permissive_risky = [(-13.54, -0.885), (-13.54, -4.0), (-13.54, 0.0)]
    want_constraining_risky = [(-23.54, -1.835), (-26.54, -9.5), (-13.54, -20.0)]
    want_safe = [(-17.80, -0.95), (-17.80, -8.0), (-17.80, 0.0)]

    for cell, (robot, human) in zip(game.permissive.row(RISKY), want_permissive_risky):
        assert abs(cell.robot - robot) < tol and abs(cell.human - human) < tol
    for cell, (robot, human) in zip(
        game.constraining.row(RISKY), want_constraining_risky
    ):
        assert abs(cell.robot - robot) < tol and abs(cell.human - human) < tol
    for matrix in (game.permissive, game.constraining):
        for cell, (robot, human) in zip(matrix.row(SAFE), want_safe):
            assert abs(cell.robot - robot) < tol and abs(cell.human - human) < tol


@criterion("boundary reproduction")
def test_boundary_reproduction(game):
    boundary = tm.compute_boundary(game, tm.MatrixSource.CONSTRAINING)
    scale = 10.0 / boundary.no_observe_coef
    assert scale > 0
    assert abs(boundary.observe_execution_coef * scale + 3.0) < 1e-9
    assert abs(boundary.constant * scale + 5.74) < 1e-9


@criterion("no-trust instance")
def test_no_trust_instance(game, scenario):
    report = tm.equilibrium_report(game)
    assert report.existence_probability == pytest.approx(0.5, abs=1e-12)
    assert report.permissive_equilibria == (
        tm.PureProfile(robot=RISKY, human=tm.HumanAction.NO_OBSERVE),
    )
    assert report.constraining_equilibria == ()
    assert report.no_trust_condition == (False, False)

    import dataclasses

    certain = dataclasses.replace(scenario.cost_model, robustness=1.0)
    assert tm.check_no_trust_condition(certain) == (True, True)


@criterion("optimal monitoring vs grid oracle")
def test_optimal_monitoring(game):
    boundary = tm.compute_boundary(game)
    result = tm.optimal_monitoring(game, boundary)

    assert result.strategy.observe_plan == pytest.approx(0.426, abs=1e-6)
    assert result.strategy.observe_execution == pytest.approx(0.0, abs=1e-6)
    assert result.strategy.no_observe == pytest.approx(0.574, abs=1e-6)
    assert result.human_expected_utility == pytest.approx(-0.4047, abs=1e-4)
    assert result.binding_vertex

    # Independent oracle: exhaustive 1000x1000 grid over (qE, qN).
    start = time.monotonic()
    human = game.cost_model.human
    axis = np.linspace(0.0, 1.0, 1000)
    q_e, q_n = (m.ravel() for m in np.meshgrid(axis, axis))
    keep = (q_e + q_n <= 1.0 + 1e-12) & (
        boundary.no_observe_coef * q_n
        + boundary.observe_execution_coef * q_e
        + boundary.constant
        <= 1e-9
    )
    q_p = 1.0 - q_e[keep] - q_n[keep]
    objective = -(q_p * human.plan_obs_cost.safe + q_e[keep] * human.exec_obs_cost.safe)
    best_grid = float(objective.max())
    elapsed = time.monotonic() - start

    assert result.human_expected_utility >= best_grid - 1e-9
    assert result.human_expected_utility - best_grid <= 2e-3
    assert elapsed < 5.0, f"grid oracle took {elapsed:.2f}s"


@criterion("best-response/region agreement")
def test_best_response_region_agreement():
    start = time.monotonic()
    rng = random.Random(101)
    point_rng = np.random.default_rng(103)
    disagreements = 0
    for _ in range(100):
        model = random_cost_model(rng)
        game = tm.build_game(model)
        boundary = tm.compute_boundary(game)
        region = tm.region_vertices(boundary)
        points = point_rng.dirichlet(np.ones(3), size=10_000)
        for p, e, n in points:
            q = tm.MonitoringStrategy(p, e, n)
            if abs(boundary.value(q)) <= 1e-9:
                continue
            inside_open = tm.contains(region, q, closed=False)
            inside_closed = tm.contains(region, q, closed=True)
            response = tm.best_response_robot(game, q)
            if inside_open and response is not SAFE:
                disagreements += 1
            if not inside_closed and response is not RISKY:
                disagreements += 1
    elapsed = time.monotonic() - start
    assert disagreements == 0
    assert elapsed < 30.0, f"agreement sweep took {elapsed:.2f}s"


@criterion("simulator statistics")
def test_simulator_statistics(game):
    n = 100_000
    q = tm.MonitoringStrategy(0.3, 0.3, 0.4)
    config = tm.SessionConfig(trial_limit=n)
    session = tm.Session(game=game, config=config, seed=2024)
    for _ in range(n):
        session.run_trial(q)

    def bound(p):
        return 3.0 * math.sqrt(p * (1.0 - p) / n)

    for action, weight in zip(tm.HUMAN_ACTIONS, q.as_tuple()):
        freq = sum(1 for t in session.trials if t.sampled_human_action is action) / n
        assert abs(freq - weight) <= bound(weight)
    r = game.cost_model.robustness
    type_freq = (
        sum(1 for t in session.trials if t.sampled_type is tm.SupervisorType.PERMISSIVE)
        / n
    )
    assert abs(type_freq - r) <= bound(r)

    replayed = tm.replay_session(
        game, config, 2024, (t.strategy for t in session.trials)
    )
    assert replayed.trials == session.trials


@criterion("CLI/API parity")
def test_cli_api_parity(capsys):
    code = cli_main(
        [
            "analyze",
            "--scenario",
            str(tm.delivery_scenario_path()),
            "--format",
            "machine",
        ]
    )
    assert code == 0
    cli_doc = json.loads(capsys.readouterr().out)

    client = TestClient(create_app())
    import yaml

    doc = yaml.safe_load(tm.delivery_scenario_path().read_text())
    scenario_id = client.post("/scenarios", json=doc).json()["scenario_id"]
    api_doc = client.get(f"/scenarios/{scenario_id}/analysis").json()
    assert api_doc == cli_doc
