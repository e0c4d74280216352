"""Command-line front door.

Subcommands: ``analyze`` (full report), ``optimize`` (boundary + region +
optimal strategy), ``simulate`` (scripted or interactive trial sessions),
``region-data`` (plot-ready boundary/vertex export) and ``serve`` (the
HTTP API).  Exit codes are a stable contract: 0 ok, 1 I/O failure,
2 validation failure, 3 empty trust region.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import (
    AnalysisBundle,
    boundary_to_dict,
    build_analysis,
    bundle_to_dict,
    optimum_to_dict,
    region_data_dict,
    region_to_dict,
    strategy_to_dict,
)
from .game import HUMAN_ACTIONS, InvalidCostModelError, MatrixSource, PayoffMatrix, PlanRole
from .region import EmptyTrustRegionError, InvalidStrategyError, MonitoringStrategy
from .scenario import ScenarioFormatError, load_scenario, resolve_scenario_path
from .simulate import Session, SessionConfig, session_summary

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_EMPTY_REGION = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--scenario",
        required=True,
        help="scenario file path, or the name of a bundled scenario (e.g. delivery)",
    )
    parser.add_argument(
        "--format",
        choices=("text", "machine"),
        default="text",
        help="human-readable text or a single JSON document",
    )
    parser.add_argument("--out", type=Path, help="write output here instead of stdout")


def _add_boundary_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--boundary-source",
        choices=("constraining", "expected"),
        default="constraining",
        help="matrix the trust boundary is computed on",
    )
    parser.add_argument(
        "--epsilon",
        type=float,
        default=0.0,
        help="safety margin tightening the trust region",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trustmon",
        description="Plan and simulate monitoring strategies for a supervised robot.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="full scenario report")
    _add_common(analyze)
    _add_boundary_options(analyze)

    optimize = sub.add_parser("optimize", help="optimal monitoring strategy")
    _add_common(optimize)
    _add_boundary_options(optimize)

    simulate = sub.add_parser("simulate", help="run supervision trials")
    _add_common(simulate)
    simulate.add_argument(
        "--strategy",
        action="append",
        default=[],
        metavar="P,E,N",
        help="one trial's strategy as observe-plan,observe-execution,no-observe "
        "weights; repeat per trial",
    )
    simulate.add_argument(
        "--interactive",
        action="store_true",
        help="prompt for a strategy before every trial",
    )
    simulate.add_argument("--seed", type=int, default=0, help="session RNG seed")
    simulate.add_argument(
        "--trials", type=int, default=None, help="trial count (defaults to strategies given)"
    )
    simulate.add_argument(
        "--response-source",
        choices=("permissive", "constraining", "expected"),
        default="constraining",
        help="matrix the robot best-responds on",
    )

    region = sub.add_parser("region-data", help="plot-ready trust-region export")
    _add_common(region)
    _add_boundary_options(region)
    region.add_argument(
        "--resolution", type=int, default=100, help="boundary sample count"
    )

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--host", default="127.0.0.1")
    return parser


def _emit(args, text: str) -> None:
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _load(args) -> "AnalysisBundle":
    path = resolve_scenario_path(args.scenario)
    source = MatrixSource(getattr(args, "boundary_source", "constraining"))
    epsilon = getattr(args, "epsilon", 0.0)
    scenario = load_scenario(path)
    return build_analysis(scenario, boundary_source=source, epsilon=epsilon)


def _format_matrix(matrix: PayoffMatrix) -> list[str]:
    header = "            " + "".join(
        f"{action.value:>24}" for action in HUMAN_ACTIONS
    )
    lines = [header]
    for role, label in (
        (PlanRole.PROBABLY_RISKY, "risky plan"),
        (PlanRole.SAFE, "safe plan"),
    ):
        cells = "".join(
            f"    ({cell.robot:8.2f}, {cell.human:8.2f})" for cell in matrix.row(role)
        )
        lines.append(f"{label:<12}{cells}")
    return lines


def _render_analysis_text(bundle: AnalysisBundle) -> str:
    lines: list[str] = []
    model = bundle.scenario.cost_model
    lines.append(f"robustness (permissive-type weight): {model.robustness:g}")
    lines.append("")
    lines.append(f"permissive matrix (weight {model.robustness:g}):")
    lines.extend(_format_matrix(bundle.game.permissive))
    lines.append("")
    lines.append(f"constraining matrix (weight {1 - model.robustness:g}):")
    lines.extend(_format_matrix(bundle.game.constraining))
    lines.append("")
    lines.append("expected game:")
    lines.extend(_format_matrix(bundle.expected))
    lines.append("")

    nash = bundle.nash
    def profiles(ps):
        if not ps:
            return "none"
        return ", ".join(f"({p.robot.value}, {p.human.value})" for p in ps)

    lines.append(f"pure equilibria, permissive type: {profiles(nash.permissive_equilibria)}")
    lines.append(f"pure equilibria, constraining type: {profiles(nash.constraining_equilibria)}")
    lines.append(f"pure equilibria, expected game: {profiles(nash.expected_equilibria)}")
    lines.append(
        "no-trust condition: human_side="
        f"{str(nash.no_trust_condition.human_side).lower()}, "
        f"robot_side={str(nash.no_trust_condition.robot_side).lower()}"
    )
    lines.append(f"equilibrium existence probability: {nash.existence_probability:g}")
    lines.append("")
    lines.extend(_render_region_lines(bundle))
    return "\n".join(lines) + "\n"


def _render_region_lines(bundle: AnalysisBundle) -> list[str]:
    b = bundle.boundary
    lines = [
        "trust boundary "
        f"(source {b.source.value}): {b.no_observe_coef:g}*qN "
        f"{b.observe_execution_coef:+g}*qE {b.constant:+g} < 0 keeps the robot safe"
    ]
    if bundle.epsilon:
        lines.append(f"safety margin epsilon: {bundle.epsilon:g}")
    if bundle.region.empty:
        lines.append("trust region: EMPTY (no monitoring strategy deters the robot)")
        return lines
    lines.append("trust region vertices (observe_plan, observe_execution, no_observe):")
    for v in bundle.region.vertices:
        lines.append(
            f"  ({v.observe_plan:.6f}, {v.observe_execution:.6f}, {v.no_observe:.6f})"
        )
    if bundle.optimum is not None:
        s = bundle.optimum.strategy
        lines.append(
            "optimal monitoring strategy: "
            f"({s.observe_plan:.6f}, {s.observe_execution:.6f}, {s.no_observe:.6f})"
        )
        lines.append(
            f"supervisor expected utility at optimum: {bundle.optimum.human_expected_utility:.6f}"
        )
        lines.append(
            f"optimum on the boundary line: {str(bundle.optimum.binding_vertex).lower()}"
        )
    return lines


def cmd_analyze(args) -> int:
    bundle = _load(args)
    if args.format == "machine":
        _emit(args, json.dumps(bundle_to_dict(bundle), indent=2))
    else:
        _emit(args, _render_analysis_text(bundle))
    return EXIT_OK


def cmd_optimize(args) -> int:
    bundle = _load(args)
    if bundle.region.empty:
        sys.stderr.write(
            "no deterring strategy: the trust region is empty for this scenario\n"
        )
        return EXIT_EMPTY_REGION
    if args.format == "machine":
        doc = {
            "boundary": boundary_to_dict(bundle.boundary),
            "epsilon": bundle.epsilon,
            "region": region_to_dict(bundle.region),
            "optimum": optimum_to_dict(bundle.optimum),
        }
        _emit(args, json.dumps(doc, indent=2))
    else:
        _emit(args, "\n".join(_render_region_lines(bundle)) + "\n")
    return EXIT_OK


def cmd_region_data(args) -> int:
    bundle = _load(args)
    doc = region_data_dict(bundle, resolution=args.resolution)
    if args.format == "machine":
        _emit(args, json.dumps(doc, indent=2))
    else:
        lines = _render_region_lines(bundle)
        lines.append(f"boundary samples ({len(doc['samples'])}):")
        for sample in doc["samples"]:
            lines.append(
                f"  qN={sample['no_observe']:.6f} qE={sample['observe_execution']:.6f}"
            )
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _read_interactive_strategies(limit: int):
    for index in range(1, limit + 1):
        sys.stderr.write(
            f"trial {index}/{limit} strategy (observe_plan,observe_execution,no_observe): "
        )
        sys.stderr.flush()
        line = sys.stdin.readline()
        if not line:
            return
        line = line.strip()
        if not line:
            return
        yield line


def cmd_simulate(args) -> int:
    path = resolve_scenario_path(args.scenario)
    scenario = load_scenario(path)
    bundle = build_analysis(scenario)
    game = bundle.game

    scripted = list(args.strategy)
    if args.interactive:
        trials = args.trials if args.trials is not None else 5
    else:
        trials = args.trials if args.trials is not None else len(scripted)
        if trials != len(scripted):
            sys.stderr.write(
                f"--trials {trials} does not match the {len(scripted)} strategies given\n"
            )
            return EXIT_VALIDATION
    if trials < 1:
        sys.stderr.write("an empty session is not allowed; give at least one trial\n")
        return EXIT_VALIDATION

    config = SessionConfig(
        trial_limit=trials,
        response_source=MatrixSource(args.response_source),
    )
    session = Session(
        game=game, config=config, seed=args.seed, session_id=f"cli-{args.seed}"
    )

    texts = (
        _read_interactive_strategies(trials) if args.interactive else iter(scripted)
    )
    feedback: list[str] = []
    for text in texts:
        index = len(session.trials) + 1
        try:
            strategy = MonitoringStrategy.parse(text)
        except InvalidStrategyError as exc:
            sys.stderr.write(f"trial {index}: invalid strategy: {exc}\n")
            return EXIT_VALIDATION
        record = session.run_trial(strategy)
        line = (
            f"trial {record.index}: strategy=({strategy.observe_plan:g},"
            f"{strategy.observe_execution:g},{strategy.no_observe:g}) "
            f"robot={record.robot_choice.value} payoff={record.human_payoff:g} "
            f"cumulative={record.cumulative_human_payoff:g}"
        )
        feedback.append(line)
        if args.interactive:
            sys.stderr.write(line + "\n")

    if not session.trials:
        sys.stderr.write("an empty session is not allowed; give at least one trial\n")
        return EXIT_VALIDATION

    optimal = bundle.optimum.strategy if bundle.optimum is not None else None
    summary = session_summary(session, optimal)
    export = {
        "session_id": session.session_id,
        "seed": session.seed,
        "config": {
            "trial_limit": config.trial_limit,
            "merged_monitoring": config.merged_monitoring,
            "monitor_split": config.monitor_split,
            "response_source": config.response_source.value,
        },
        "trials": [
            {
                "index": t.index,
                "strategy": strategy_to_dict(t.strategy),
                "robot_choice": t.robot_choice.value,
                "sampled_type": t.sampled_type.value,
                "sampled_human_action": t.sampled_human_action.value,
                "robot_payoff": t.robot_payoff,
                "human_payoff": t.human_payoff,
                "cumulative_human_payoff": t.cumulative_human_payoff,
            }
            for t in session.trials
        ],
        "summary": {
            "trial_count": summary.trial_count,
            "mean_human_payoff": summary.mean_human_payoff,
            "variance_human_payoff": summary.variance_human_payoff,
            "cumulative_human_payoff": summary.cumulative_human_payoff,
            "distance_to_optimal": (
                list(summary.distance_to_optimal)
                if summary.distance_to_optimal is not None
                else None
            ),
            "optimal_strategy": (
                strategy_to_dict(optimal) if optimal is not None else None
            ),
        },
    }

    if args.format == "machine":
        _emit(args, json.dumps(export, indent=2))
    else:
        text_summary = feedback + [
            "",
            f"mean payoff: {summary.mean_human_payoff:g}",
            f"payoff variance: {summary.variance_human_payoff:g}",
            f"cumulative payoff: {summary.cumulative_human_payoff:g}",
        ]
        _emit(args, "\n".join(text_summary) + "\n")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "optimize": cmd_optimize,
        "simulate": cmd_simulate,
        "region-data": cmd_region_data,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (ScenarioFormatError, InvalidCostModelError) as exc:
        sys.stderr.write(f"scenario validation failed: {exc}\n")
        return EXIT_VALIDATION
    except EmptyTrustRegionError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_EMPTY_REGION
    except OSError as exc:
        sys.stderr.write(f"i/o failure: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
