"""HTTP/JSON API for scenario analysis and live supervision sessions.

Storage is in memory only: scenarios and sessions vanish on restart, and
durability is the client's job (download the session data it cares
about).  Requests within one session are serialized by a per-session
lock; everything across sessions runs concurrently.

Errors always carry ``{"code", "message", "details"}``.
"""

from __future__ import annotations

import secrets
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .analysis import build_analysis, bundle_to_dict, strategy_to_dict
from .game import InvalidCostModelError, MatrixSource
from .region import InvalidStrategyError
from .scenario import Scenario, ScenarioFormatError, load_scenario
from .simulate import Session, SessionConfig, TrialLimitError, TrialRecord, session_summary


class ApiError(Exception):
    """Error with a stable code and HTTP status, rendered as JSON."""

    def __init__(self, status: int, code: str, message: str, details: Any = None):
        self.status = status
        self.code = code
        self.message = message
        self.details = details if details is not None else []
        super().__init__(message)


@dataclass
class SessionState:
    """One live session plus its serialization lock."""

    session: Session
    scenario_id: str
    created_at: str
    blind: bool
    lock: threading.Lock = field(default_factory=threading.Lock)


class CreateSessionRequest(BaseModel):
    seed: int | None = None
    trial_limit: int = Field(ge=1)
    merged_monitoring: bool = False
    monitor_split: float = Field(default=1.0, ge=0.0, le=1.0)
    response_source: str = "constraining"
    blind: bool = False


class TrialRequest(BaseModel):
    strategy: list[float]


def _trial_to_dict(record: TrialRecord, hide_robot: bool = False) -> dict:
    return {
        "index": record.index,
        "strategy": strategy_to_dict(record.strategy),
        "robot_choice": None if hide_robot else record.robot_choice.value,
        "sampled_type": None if hide_robot else record.sampled_type.value,
        "sampled_human_action": record.sampled_human_action.value,
        "robot_payoff": record.robot_payoff,
        "human_payoff": record.human_payoff,
        "cumulative_human_payoff": record.cumulative_human_payoff,
    }


def create_app() -> FastAPI:
    app = FastAPI(title="trustmon session service")
    scenarios: dict[str, Scenario] = {}
    sessions: dict[str, SessionState] = {}

    @app.exception_handler(ApiError)
    async def _api_error(_: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "details": exc.details},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_: Request, exc: RequestValidationError) -> JSONResponse:
        details = [
            f"{'.'.join(str(p) for p in err['loc'] if p != 'body')}: {err['msg']}"
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=422,
            content={
                "code": "validation_error",
                "message": "request body failed validation",
                "details": details,
            },
        )

    def _get_scenario(scenario_id: str) -> Scenario:
        scenario = scenarios.get(scenario_id)
        if scenario is None:
            raise ApiError(404, "unknown_scenario", f"no scenario {scenario_id!r}")
        return scenario

    def _get_session(session_id: str) -> SessionState:
        state = sessions.get(session_id)
        if state is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        return state

    def _parse_source(value: str) -> MatrixSource:
        try:
            return MatrixSource(value)
        except ValueError:
            raise ApiError(
                422,
                "validation_error",
                f"unknown matrix source {value!r}",
                ["expected one of: permissive, constraining, expected"],
            )

    @app.post("/scenarios", status_code=201)
    async def post_scenario(document: dict) -> dict:
        try:
            scenario = load_scenario(document)
        except ScenarioFormatError as exc:
            raise ApiError(
                422, "scenario_invalid", "scenario document rejected", exc.errors
            )
        except InvalidCostModelError as exc:
            raise ApiError(
                422,
                "cost_model_invalid",
                "cost model breaks an ordering rule",
                [str(v) for v in exc.violations],
            )
        scenario_id = uuid.uuid4().hex[:12]
        scenarios[scenario_id] = scenario
        return {"scenario_id": scenario_id}

    @app.get("/scenarios/{scenario_id}/analysis")
    async def get_analysis(
        scenario_id: str,
        boundary_source: str = Query(default="constraining"),
        epsilon: float = Query(default=0.0),
    ) -> dict:
        scenario = _get_scenario(scenario_id)
        bundle = build_analysis(
            scenario,
            boundary_source=_parse_source(boundary_source),
            epsilon=epsilon,
        )
        return bundle_to_dict(bundle)

    @app.post("/scenarios/{scenario_id}/sessions", status_code=201)
    async def post_session(scenario_id: str, body: CreateSessionRequest) -> dict:
        scenario = _get_scenario(scenario_id)
        source = _parse_source(body.response_source)
        seed = body.seed if body.seed is not None else secrets.randbits(63)
        config = SessionConfig(
            trial_limit=body.trial_limit,
            merged_monitoring=body.merged_monitoring,
            monitor_split=body.monitor_split,
            response_source=source,
        )
        bundle = build_analysis(scenario, boundary_source=source)
        session_id = uuid.uuid4().hex[:12]
        state = SessionState(
            session=Session(
                game=bundle.game,
                config=config,
                seed=seed,
                session_id=session_id,
            ),
            scenario_id=scenario_id,
            created_at=datetime.now(timezone.utc).isoformat(),
            blind=body.blind,
        )
        sessions[session_id] = state
        return {
            "session_id": session_id,
            "created_at": state.created_at,
            "scenario_id": scenario_id,
            "trial_limit": config.trial_limit,
            "seed": seed,
            "merged_monitoring": config.merged_monitoring,
            "response_source": config.response_source.value,
            "blind": state.blind,
        }

    @app.post("/sessions/{session_id}/trials")
    async def post_trial(session_id: str, body: TrialRequest) -> dict:
        state = _get_session(session_id)
        with state.lock:
            session = state.session
            if len(session.trials) >= session.config.trial_limit:
                raise ApiError(
                    409,
                    "trial_limit_reached",
                    f"session already holds {session.config.trial_limit} trials",
                )
            try:
                strategy = session.strategy_from_weights(body.strategy)
            except InvalidStrategyError as exc:
                raise ApiError(422, "invalid_strategy", str(exc))
            try:
                record = session.run_trial(strategy)
            except TrialLimitError as exc:  # pragma: no cover - guarded above
                raise ApiError(409, "trial_limit_reached", str(exc))
            at_limit = len(session.trials) >= session.config.trial_limit
            hide = state.blind and not at_limit
            return _trial_to_dict(record, hide_robot=hide)

    @app.get("/sessions/{session_id}/summary")
    async def get_summary(session_id: str) -> dict:
        state = _get_session(session_id)
        with state.lock:
            session = state.session
            scenario = scenarios[state.scenario_id]
            bundle = build_analysis(
                scenario, boundary_source=session.config.response_source
            )
            optimal = bundle.optimum.strategy if bundle.optimum is not None else None
            base = {
                "session_id": session_id,
                "scenario_id": state.scenario_id,
                "trial_limit": session.config.trial_limit,
                "seed": session.seed,
                "optimal_strategy": (
                    strategy_to_dict(optimal) if optimal is not None else None
                ),
                "trials": [_trial_to_dict(t) for t in session.trials],
            }
            if not session.trials:
                base.update(
                    {
                        "trial_count": 0,
                        "mean_human_payoff": None,
                        "variance_human_payoff": None,
                        "cumulative_human_payoff": None,
                        "distance_to_optimal": None,
                    }
                )
                return base
            summary = session_summary(session, optimal)
            base.update(
                {
                    "trial_count": summary.trial_count,
                    "mean_human_payoff": summary.mean_human_payoff,
                    "variance_human_payoff": summary.variance_human_payoff,
                    "cumulative_human_payoff": summary.cumulative_human_payoff,
                    "distance_to_optimal": (
                        list(summary.distance_to_optimal)
                        if summary.distance_to_optimal is not None
                        else None
                    ),
                }
            )
            return base

    return app
