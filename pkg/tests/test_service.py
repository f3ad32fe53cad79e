import json

import pytest
from fastapi.testclient import TestClient

from optistop.noisy_selection import NoisyModel
from optistop.planner import CostModel, optimal_sample_size
from optistop.sequential_advisor import SessionState, advise, record_observation
from optistop.service import SessionStore, create_app

MODEL = {"mu": 10.0, "a": 3.0, "b": 4.0}
COST = {"c": 0.1}


@pytest.fixture()
def client():
    return TestClient(create_app(store=SessionStore()))


def _direct_advice(values, model=MODEL, cost=COST):
    state = SessionState(
        model=NoisyModel(worth_mean=model["mu"], worth_spread=model["a"], error_spread=model["b"]),
        cost=CostModel(cost["c"]),
    )
    for v in values:
        state = record_observation(state, v)
    return advise(state).to_dict()


class TestPlanEndpoint:
    def test_noisy_plan_matches_library(self, client):
        payload = {"model": {"mu": 0, "a": 1, "b": 0}, "cost": {"c": 0.06}, "n_max": 50}
        response = client.post("/v1/plan", json=payload)
        assert response.status_code == 200
        direct = optimal_sample_size(
            NoisyModel(worth_mean=0, worth_spread=1, error_spread=0),
            CostModel(0.06),
            n_max=50,
        )
        assert response.json() == json.loads(direct.to_json())

    def test_ideal_plan(self, client):
        payload = {"dist": {"family": "uniform", "lo": 0, "hi": 1}, "cost": {"c": 0.06}, "n_max": 50}
        body = client.post("/v1/plan", json=payload).json()
        assert body["n_star"] == 3

    def test_divergent_gain(self, client):
        payload = {"dist": {"family": "pareto", "alpha": 0.5}, "cost": {"c": 1.0}, "n_max": 20}
        response = client.post("/v1/plan", json=payload)
        assert response.status_code == 422
        assert response.json() == {"error": "divergent_gain"}

    def test_validation_error_shape(self, client):
        response = client.post(
            "/v1/plan", json={"model": {"mu": 0, "a": 0, "b": 0}, "cost": COST}
        )
        assert response.status_code == 400
        assert response.json() == {"error": "invalid_model", "field": "model.a"}

    def test_missing_cost(self, client):
        response = client.post("/v1/plan", json={"model": MODEL})
        assert response.status_code == 400
        assert response.json()["field"] == "cost"


class TestRankitsEndpoint:
    def test_uniform_preset(self, client):
        response = client.get("/v1/rankits", params={"family": "uniform01", "max_n": 4})
        assert response.status_code == 200
        body = response.json()
        assert body["spec"] == {"family": "uniform", "lo": 0.0, "hi": 1.0}
        rows = body["rows"]
        assert rows[0][0] == 1 and rows[0][2] is None
        assert rows[3][1] == pytest.approx(0.8, abs=1e-9)
        assert rows[3][2] == pytest.approx(0.05, abs=1e-9)

    def test_divergent_family(self, client):
        response = client.get(
            "/v1/rankits",
            params={"family": '{"family":"pareto","alpha":0.5}', "max_n": 3},
        )
        assert response.status_code == 422
        assert response.json() == {"error": "divergent_gain"}


class TestSessionFlow:
    def test_round_trip(self, client):
        created = client.post("/v1/sessions", json={"model": MODEL, "cost": COST})
        assert created.status_code == 200
        sid = created.json()["session_id"]

        advice = client.post(
            f"/v1/sessions/{sid}/observations", json={"measured_worth": 15.0}
        ).json()
        assert advice["recommendation"] == "sample_more"
        assert advice["posterior_best_worth"] == pytest.approx(11.8, abs=1e-9)
        assert advice == _direct_advice([15.0])

        for value in (12.0, 14.5):
            advice = client.post(
                f"/v1/sessions/{sid}/observations", json={"measured_worth": value}
            ).json()
        assert advice == _direct_advice([15.0, 12.0, 14.5])

        summary = client.get(f"/v1/sessions/{sid}").json()
        assert summary["session_id"] == sid
        assert summary["best_measured"] == pytest.approx(5.0)  # max input minus mu
        assert [o["measured_worth"] for o in summary["observations"]] == [15.0, 12.0, 14.5]
        assert summary["observations"][0]["posterior_worth"] == pytest.approx(11.8)
        assert summary["advice"] == _direct_advice([15.0, 12.0, 14.5])

    def test_unknown_session(self, client):
        response = client.get("/v1/sessions/nope")
        assert response.status_code == 404
        assert response.json() == {"error": "unknown_session"}
        response = client.post(
            "/v1/sessions/nope/observations", json={"measured_worth": 1.0}
        )
        assert response.status_code == 404

    def test_rejects_bad_observation(self, client):
        sid = client.post("/v1/sessions", json={"model": MODEL, "cost": COST}).json()[
            "session_id"
        ]
        response = client.post(
            f"/v1/sessions/{sid}/observations", json={"measured_worth": "tall"}
        )
        assert response.status_code == 400
        assert response.json()["field"] == "measured_worth"


class TestStatelessAdvise:
    def test_what_if_matches_session_math(self, client):
        payload = {"model": MODEL, "cost": {"c": 0.2}, "measured_worths": [15.0]}
        body = client.post("/v1/advise", json=payload).json()
        assert body["recommendation"] == "stop"
        assert body == _direct_advice([15.0], cost={"c": 0.2})

    def test_empty_search(self, client):
        body = client.post(
            "/v1/advise", json={"model": MODEL, "cost": COST, "measured_worths": []}
        ).json()
        assert body["recommendation"] == "sample_more"
        assert body["z0"] is None


class TestSimulateEndpoint:
    def test_selection(self, client):
        payload = {
            "target": "selection",
            "model": {"mu": 0, "a": 3, "b": 4},
            "n": 5,
            "trials": 10_000,
            "seed": 42,
        }
        body = client.post("/v1/simulate", json=payload).json()
        assert body["trials"] == 10_000 and body["seed"] == 42
        assert body["std_error"] > 0

    def test_expected_max(self, client):
        payload = {
            "target": "expected_max",
            "dist": {"family": "uniform", "lo": 0, "hi": 1},
            "n": 4,
            "trials": 50_000,
            "seed": 7,
        }
        body = client.post("/v1/simulate", json=payload).json()
        assert body["mean"] == pytest.approx(0.8, abs=3 * body["std_error"])

    def test_policy(self, client):
        payload = {
            "target": "policy",
            "model": {"mu": 1.0, "a": 1, "b": 0},
            "cost": {"c": 0.5},
            "policy": {"planned_n": 1},
            "trials": 20_000,
            "seed": 3,
        }
        body = client.post("/v1/simulate", json=payload).json()
        assert body["mean"] == pytest.approx(1.0, abs=3 * body["std_error"])

    def test_unknown_target(self, client):
        response = client.post("/v1/simulate", json={"target": "lottery"})
        assert response.status_code == 400
        assert response.json()["error"] == "unknown_target"


class TestSnapshot:
    def test_replay_identical(self, tmp_path):
        path = str(tmp_path / "events.jsonl")
        store = SessionStore(snapshot_path=path)
        app = TestClient(create_app(store=store))
        sid1 = app.post("/v1/sessions", json={"model": MODEL, "cost": COST}).json()[
            "session_id"
        ]
        sid2 = app.post(
            "/v1/sessions", json={"model": {"mu": 0, "a": 1, "b": 0}, "cost": {"c": 0.3}}
        ).json()["session_id"]
        for v in (15.0, 12.0, 16.5):
            app.post(f"/v1/sessions/{sid1}/observations", json={"measured_worth": v})
        app.post(f"/v1/sessions/{sid2}/observations", json={"measured_worth": 0.2})

        replayed = TestClient(create_app(store=SessionStore(snapshot_path=path)))
        for sid in (sid1, sid2):
            original = app.get(f"/v1/sessions/{sid}").json()
            restored = replayed.get(f"/v1/sessions/{sid}").json()
            assert restored == original

    def test_env_var_sets_path(self, tmp_path, monkeypatch):
        path = str(tmp_path / "env-events.jsonl")
        monkeypatch.setenv("OPTISTOP_SNAPSHOT", path)
        app = TestClient(create_app())
        app.post("/v1/sessions", json={"model": MODEL, "cost": COST})
        with open(path) as fh:
            events = [json.loads(line) for line in fh]
        assert events[0]["event"] == "created"
