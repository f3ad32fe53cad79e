"""JSON/HTTP session service: planning, rankit tables, simulation, and the
sequential advisor behind the web UI.

All endpoints live under /v1 and speak plain JSON dicts (the exact
serializations of the library types).  Validation failures return
``{"error": ..., "field": ...}``; unknown sessions return 404 with
``{"error": "unknown_session"}``; a plan whose gain grows without bound
(Pareto alpha <= 1) returns ``{"error": "divergent_gain"}``.

Sessions are held in memory with per-session write serialization and an
optional JSON-lines snapshot (one created/observation event per line) that
replays to an identical store; OPTISTOP_SNAPSHOT overrides the path.
"""

from __future__ import annotations

import json
import math
import os
import secrets
import threading
import time

from fastapi import Body, FastAPI
from fastapi.responses import JSONResponse

from . import mc_oracle
from .distributions import DistributionError, Pareto, spec_from_dict, spec_from_text, spec_to_dict
from .noisy_selection import NoisyModel
from .order_stats import DivergenceError, RankitTable
from .planner import CostModel, optimal_sample_size
from .sequential_advisor import SessionState, advise, record_observation

SNAPSHOT_ENV = "OPTISTOP_SNAPSHOT"


class ApiError(Exception):
    def __init__(self, status: int, error: str, field: str | None = None):
        super().__init__(error)
        self.status = status
        self.error = error
        self.field = field

    def response(self) -> JSONResponse:
        body: dict = {"error": self.error}
        if self.field is not None:
            body["field"] = self.field
        return JSONResponse(body, status_code=self.status)


class UnknownSessionError(ApiError):
    def __init__(self):
        super().__init__(404, "unknown_session")


def _require_number(payload: dict, key: str, field: str) -> float:
    if key not in payload:
        raise ApiError(400, "missing_field", field)
    value = payload[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ApiError(400, "not_a_number", field)
    if not math.isfinite(float(value)):
        raise ApiError(400, "not_finite", field)
    return float(value)


def _parse_noisy_model(payload: dict) -> NoisyModel:
    if not isinstance(payload.get("model"), dict):
        raise ApiError(400, "missing_field", "model")
    raw = payload["model"]
    mu = _require_number(raw, "mu", "model.mu")
    a = _require_number(raw, "a", "model.a")
    b = _require_number(raw, "b", "model.b")
    if a <= 0:
        raise ApiError(400, "invalid_model", "model.a")
    if b < 0:
        raise ApiError(400, "invalid_model", "model.b")
    return NoisyModel(worth_mean=mu, worth_spread=a, error_spread=b)


def _parse_cost(payload: dict) -> CostModel:
    if not isinstance(payload.get("cost"), dict):
        raise ApiError(400, "missing_field", "cost")
    c = _require_number(payload["cost"], "c", "cost.c")
    if c < 0:
        raise ApiError(400, "invalid_cost", "cost.c")
    return CostModel(per_item_cost=c)


def _parse_spec(data, field: str):
    try:
        if isinstance(data, str):
            return spec_from_text(data)
        if isinstance(data, dict):
            return spec_from_dict(data)
    except DistributionError:
        raise ApiError(400, "invalid_distribution", field) from None
    raise ApiError(400, "invalid_distribution", field)


class SessionStore:
    """In-memory sessions with serialized per-session updates and an
    append-only JSON-lines snapshot for replay."""

    def __init__(self, snapshot_path: str | None = None):
        self._sessions: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._mutex = threading.Lock()
        self._snapshot_path = snapshot_path
        self._recording = False
        if snapshot_path and os.path.exists(snapshot_path):
            self._replay(snapshot_path)
        self._recording = snapshot_path is not None

    def _replay(self, path: str) -> None:
        with open(path, encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                event = json.loads(line)
                if event["event"] == "created":
                    self.create(
                        NoisyModel.from_dict(event["model"]),
                        CostModel.from_dict(event["cost"]),
                        session_id=event["session_id"],
                        timestamp=event["ts"],
                    )
                elif event["event"] == "observation":
                    self.observe(
                        event["session_id"],
                        event["measured_worth"],
                        timestamp=event["ts"],
                    )

    def _record(self, event: dict) -> None:
        if not self._recording or self._snapshot_path is None:
            return
        with self._mutex:
            with open(self._snapshot_path, "a", encoding="utf-8") as handle:
                handle.write(json.dumps(event) + "\n")

    def create(
        self,
        model: NoisyModel,
        cost: CostModel,
        session_id: str | None = None,
        timestamp: float | None = None,
    ) -> str:
        sid = session_id or secrets.token_hex(8)
        now = time.time() if timestamp is None else float(timestamp)
        state = SessionState(model=model, cost=cost, created=now, updated=now)
        with self._mutex:
            if sid in self._sessions:
                raise ValueError(f"session id collision: {sid}")
            self._sessions[sid] = state
            self._locks[sid] = threading.Lock()
        self._record(
            {
                "event": "created",
                "session_id": sid,
                "model": model.to_dict(),
                "cost": cost.to_dict(),
                "ts": now,
            }
        )
        return sid

    def get(self, session_id: str) -> SessionState:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSessionError() from None

    def observe(
        self, session_id: str, measured_worth: float, timestamp: float | None = None
    ) -> SessionState:
        with self._mutex:
            lock = self._locks.get(session_id)
        if lock is None:
            raise UnknownSessionError()
        now = time.time() if timestamp is None else float(timestamp)
        with lock:
            updated = record_observation(
                self._sessions[session_id], measured_worth, timestamp=now
            )
            self._sessions[session_id] = updated
            # inside the session lock so snapshot order matches state order
            self._record(
                {
                    "event": "observation",
                    "session_id": session_id,
                    "measured_worth": float(measured_worth),
                    "ts": now,
                }
            )
        return updated

    def session_ids(self) -> list[str]:
        with self._mutex:
            return list(self._sessions)


def _session_summary(session_id: str, state: SessionState) -> dict:
    model = state.model
    observations = [
        {
            "measured_worth": model.worth_mean + centered,
            "posterior_worth": model.worth_mean + model.shrinkage * centered,
        }
        for centered in state.observations
    ]
    return {
        "session_id": session_id,
        "model": model.to_dict(),
        "cost": state.cost.to_dict(),
        "observations": observations,
        "best_measured": state.best_measured,
        "created": state.created,
        "updated": state.updated,
        "advice": advise(state).to_dict(),
    }


def _run_plan(payload: dict) -> dict:
    cost = _parse_cost(payload)
    n_max = payload.get("n_max", 10_000)
    if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 2:
        raise ApiError(400, "invalid_n_max", "n_max")
    if "dist" in payload:
        target = _parse_spec(payload["dist"], "dist")
    else:
        target = _parse_noisy_model(payload)
    result = optimal_sample_size(target, cost, n_max=n_max)
    if result.diverges and not math.isfinite(result.expected_gain):
        raise ApiError(422, "divergent_gain")
    return result.to_dict()


def _run_simulation(payload: dict) -> dict:
    target = payload.get("target")
    trials = payload.get("trials", 1_000_000)
    seed = payload.get("seed", 0)
    workers = payload.get("workers", 1)
    for key, value in (("trials", trials), ("seed", seed), ("workers", workers)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ApiError(400, "not_an_integer", key)
    try:
        if target == "expected_max":
            spec = _parse_spec(payload.get("dist"), "dist")
            n = int(_require_number(payload, "n", "n"))
            est = mc_oracle.simulate_expected_max(spec, n, trials, seed, workers)
        elif target == "selection":
            model = _parse_noisy_model(payload)
            n = int(_require_number(payload, "n", "n"))
            est = mc_oracle.simulate_selection(model, n, trials, seed, workers)
        elif target == "one_more":
            model = _parse_noisy_model(payload)
            w0 = _require_number(payload, "w0", "w0")
            est = mc_oracle.simulate_one_more(model, w0, trials, seed, workers)
        elif target == "policy":
            model = _parse_noisy_model(payload)
            cost = _parse_cost(payload)
            raw = payload.get("policy")
            if not isinstance(raw, dict):
                raise ApiError(400, "missing_field", "policy")
            if "planned_n" in raw:
                policy = mc_oracle.PlannedN(int(_require_number(raw, "planned_n", "policy.planned_n")))
            elif "lookahead_max" in raw:
                policy = mc_oracle.OneMoreLookahead(
                    int(_require_number(raw, "lookahead_max", "policy.lookahead_max"))
                )
            else:
                raise ApiError(400, "invalid_policy", "policy")
            est = mc_oracle.simulate_policy(model, cost, policy, trials, seed, workers)
        else:
            raise ApiError(400, "unknown_target", "target")
    except ValueError as exc:
        raise ApiError(400, "invalid_request", str(exc)) from None
    return est.to_dict()


def create_app(
    store: SessionStore | None = None, snapshot_path: str | None = None
) -> FastAPI:
    """Build the service; snapshot path resolution: explicit argument, then
    OPTISTOP_SNAPSHOT, then no persistence."""
    if store is None:
        path = snapshot_path or os.environ.get(SNAPSHOT_ENV) or None
        store = SessionStore(snapshot_path=path)

    app = FastAPI(title="optistop", version="0.1.0")
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_request, exc: ApiError):
        return exc.response()

    @app.post("/v1/plan")
    def plan(payload: dict = Body(...)):
        return _run_plan(payload)

    @app.get("/v1/rankits")
    def rankits(family: str, max_n: int, tol: float = 1e-9):
        if max_n < 1:
            raise ApiError(400, "invalid_max_n", "max_n")
        spec = _parse_spec(family, "family")
        try:
            table = RankitTable.compute(spec, max_n, tol)
        except DivergenceError:
            raise ApiError(422, "divergent_gain") from None
        return {
            "spec": spec_to_dict(spec),
            "max_n": table.max_n,
            "tolerance": table.tolerance,
            "rows": [[n, total, marginal] for n, total, marginal in table.rows()],
        }

    @app.post("/v1/sessions")
    def create_session(payload: dict = Body(...)):
        model = _parse_noisy_model(payload)
        cost = _parse_cost(payload)
        return {"session_id": store.create(model, cost)}

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_summary(session_id, store.get(session_id))

    @app.post("/v1/sessions/{session_id}/observations")
    def add_observation(session_id: str, payload: dict = Body(...)):
        value = _require_number(payload, "measured_worth", "measured_worth")
        state = store.observe(session_id, value)
        return advise(state).to_dict()

    @app.post("/v1/advise")
    def advise_stateless(payload: dict = Body(...)):
        """What-if advice: same math as a session, no state touched."""
        model = _parse_noisy_model(payload)
        cost = _parse_cost(payload)
        values = payload.get("measured_worths", [])
        if not isinstance(values, list):
            raise ApiError(400, "not_a_list", "measured_worths")
        state = SessionState(model=model, cost=cost)
        for index, value in enumerate(values):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ApiError(400, "not_a_number", f"measured_worths[{index}]")
            state = record_observation(state, float(value))
        return advise(state).to_dict()

    @app.post("/v1/simulate")
    def simulate(payload: dict = Body(...)):
        return _run_simulation(payload)

    return app


def serve(
    host: str = "127.0.0.1",
    port: int = 8000,
    snapshot_path: str | None = None,
    static_dir: str | None = None,
) -> None:
    """Run the service under uvicorn; optionally mount a static UI at /."""
    import uvicorn

    app = create_app(snapshot_path=snapshot_path)
    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    uvicorn.run(app, host=host, port=port, log_level="warning")
