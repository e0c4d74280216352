import dataclasses
import random

import trustmon as tm

from conftest import random_cost_model, zero_cost_model

RISKY = tm.PlanRole.PROBABLY_RISKY
SAFE = tm.PlanRole.SAFE
OP = tm.HumanAction.OBSERVE_PLAN
OE = tm.HumanAction.OBSERVE_EXECUTION
NO = tm.HumanAction.NO_OBSERVE


def scale_matrix(matrix: tm.PayoffMatrix, k: float) -> tm.PayoffMatrix:
    def row(role):
        return tuple(
            tm.PayoffCell(robot=k * c.robot, human=k * c.human)
            for c in matrix.row(role)
        )

    return tm.PayoffMatrix(risky=row(RISKY), safe=row(SAFE))


class TestPureNash:
    def test_delivery_expected_game_has_none(self, delivery_game):
        assert tm.pure_nash(tm.expected_game(delivery_game)) == []

    def test_delivery_permissive_type_trusts(self, delivery_game):
        assert tm.pure_nash(delivery_game.permissive) == [
            tm.PureProfile(robot=RISKY, human=NO)
        ]

    def test_delivery_constraining_type_has_none(self, delivery_game):
        assert tm.pure_nash(delivery_game.constraining) == []

    def test_strictly_dominant_cell_is_unique_equilibrium(self):
        # One cell strictly best in its row for the human and in its
        # column for the robot.
        risky = (
            tm.PayoffCell(-1.0, -1.0),
            tm.PayoffCell(-2.0, -2.0),
            tm.PayoffCell(-3.0, -3.0),
        )
        safe = (
            tm.PayoffCell(-4.0, -5.0),
            tm.PayoffCell(-4.0, -6.0),
            tm.PayoffCell(-4.0, -7.0),
        )
        matrix = tm.PayoffMatrix(risky=risky, safe=safe)
        assert tm.pure_nash(matrix) == [tm.PureProfile(robot=RISKY, human=OP)]

    def test_constant_game_has_all_cells(self):
        game = tm.build_game(zero_cost_model(), check=False)
        assert len(tm.pure_nash(game.permissive)) == 6

    def test_scaling_leaves_equilibria_unchanged(self, delivery_game):
        rng = random.Random(23)
        for _ in range(50):
            model = random_cost_model(rng)
            matrix = tm.build_game(model).constraining
            k = rng.uniform(0.1, 50.0)
            assert tm.pure_nash(scale_matrix(matrix, k)) == tm.pure_nash(matrix)

    def test_column_permutation_permutes_equilibria(self):
        rng = random.Random(29)
        perm = [2, 0, 1]  # new column i comes from old column perm[i]
        actions = list(tm.HUMAN_ACTIONS)
        for _ in range(50):
            matrix = tm.build_game(random_cost_model(rng)).constraining

            def permuted_row(role):
                row = matrix.row(role)
                return tuple(row[perm[i]] for i in range(3))

            permuted = tm.PayoffMatrix(
                risky=permuted_row(RISKY), safe=permuted_row(SAFE)
            )
            base = {
                (p.robot, p.human) for p in tm.pure_nash(matrix)
            }
            mapped = {
                (p.robot, actions[perm[actions.index(p.human)]])
                for p in tm.pure_nash(permuted)
            }
            assert mapped == base


class TestNoTrustCondition:
    def test_delivery_fails_both_sides(self, delivery_model):
        assert tm.check_no_trust_condition(delivery_model) == (False, False)

    def test_full_robustness_holds_both_sides(self, delivery_model):
        model = dataclasses.replace(delivery_model, robustness=1.0)
        assert tm.check_no_trust_condition(model) == (True, True)

    def test_zero_violation_cost_satisfies_human_side(self, delivery_model):
        human = dataclasses.replace(delivery_model.human, violation_cost=0.0)
        model = dataclasses.replace(delivery_model, human=human)
        assert tm.check_no_trust_condition(model).human_side is True

    def test_condition_implies_trusting_equilibrium(self):
        # Whenever both sides hold, (risky, no-observe) must be a pure
        # equilibrium of the expected game.  Sample high robustness so the
        # condition actually fires.
        rng = random.Random(31)
        hits = 0
        for i in range(1000):
            model = random_cost_model(rng, high_robustness=i % 2 == 0)
            condition = tm.check_no_trust_condition(model)
            if not (condition.human_side and condition.robot_side):
                continue
            hits += 1
            game = tm.build_game(model)
            profiles = tm.pure_nash(tm.expected_game(game))
            assert tm.PureProfile(robot=RISKY, human=NO) in profiles
        assert hits > 50


class TestBestResponse:
    def test_always_review_deters(self, delivery_game):
        q = tm.MonitoringStrategy.pure(OP)
        assert tm.best_response_robot(delivery_game, q) is SAFE

    def test_never_observe_invites_risk(self, delivery_game):
        q = tm.MonitoringStrategy.pure(NO)
        assert tm.best_response_robot(delivery_game, q) is RISKY

    def test_tie_breaks_toward_safe(self):
        game = tm.build_game(zero_cost_model(), check=False)
        q = tm.MonitoringStrategy(0.2, 0.3, 0.5)
        for source in tm.MatrixSource:
            assert tm.best_response_robot(game, q, source) is SAFE

    def test_matches_trust_region_for_constraining_type(self):
        rng = random.Random(37)
        for _ in range(100):
            model = random_cost_model(rng)
            game = tm.build_game(model)
            boundary = tm.compute_boundary(game, tm.MatrixSource.CONSTRAINING)
            region = tm.region_vertices(boundary)
            for _ in range(100):
                u, v = sorted((rng.random(), rng.random()))
                q = tm.MonitoringStrategy(u, v - u, 1.0 - v)
                if abs(boundary.value(q)) <= 1e-9:
                    continue
                inside = tm.contains(region, q, closed=True)
                response = tm.best_response_robot(game, q)
                assert inside == (response is SAFE)

    def test_scaling_leaves_best_response_unchanged(self, delivery_model):
        rng = random.Random(41)
        for _ in range(50):
            model = random_cost_model(rng)
            scaled = tm.CostModel(
                robot=tm.RobotCosts(
                    plan_cost=tm.ByPlan(
                        safe=3.0 * model.robot.plan_cost.safe,
                        risky=3.0 * model.robot.plan_cost.risky,
                    ),
                    exec_cost=tm.ByPlan(
                        safe=3.0 * model.robot.exec_cost.safe,
                        risky=3.0 * model.robot.exec_cost.risky,
                    ),
                    partial_exec_cost=3.0 * model.robot.partial_exec_cost,
                    goal_penalty=3.0 * model.robot.goal_penalty,
                ),
                human=model.human,
                robustness=model.robustness,
            )
            game = tm.build_game(model)
            scaled_game = tm.build_game(scaled)
            u, v = sorted((rng.random(), rng.random()))
            q = tm.MonitoringStrategy(u, v - u, 1.0 - v)
            for source in tm.MatrixSource:
                assert tm.best_response_robot(
                    game, q, source
                ) is tm.best_response_robot(scaled_game, q, source)


class TestEquilibriumReport:
    def test_delivery_report(self, delivery_game):
        report = tm.equilibrium_report(delivery_game)
        assert report.existence_probability == 0.5
        assert report.permissive_equilibria == (
            tm.PureProfile(robot=RISKY, human=NO),
        )
        assert report.constraining_equilibria == ()
        assert report.no_trust_condition == (False, False)
        assert report.per_type(tm.SupervisorType.PERMISSIVE) == (
            tm.PureProfile(robot=RISKY, human=NO),
        )

    def test_full_robustness_report(self, delivery_model):
        model = dataclasses.replace(delivery_model, robustness=1.0)
        report = tm.equilibrium_report(tm.build_game(model))
        assert report.existence_probability == 1.0

    def test_constant_game_report(self):
        report = tm.equilibrium_report(tm.build_game(zero_cost_model(), check=False))
        assert report.existence_probability == 1.0
        assert len(report.permissive_equilibria) == 6
        assert len(report.constraining_equilibria) == 6
