import json

import pytest
from fastapi.testclient import TestClient

from chinos.quantum import ORDERED_PAIRS, admissible_guesses
from chinos.service import create_app
from chinos.session import replay_log


@pytest.fixture()
def client():
    return TestClient(create_app())


def new_session(client, variant="quantum", players=None, rounds=3, seed=21, **extra):
    players = players or [{"kind": "human"}, {"kind": "human"}]
    body = {"variant": variant, "players": players, "rounds": rounds, "seed": seed}
    body.update(extra)
    response = client.post("/sessions", json=body)
    assert response.status_code == 200, response.text
    return response.json()["id"]


class TestSessionLifecycle:
    def test_create_returns_id_and_view(self, client):
        response = client.post(
            "/sessions",
            json={
                "variant": "quantum",
                "players": [{"kind": "human"}, {"kind": "engine", "policy": "qcg-paper"}],
                "rounds": 10,
                "seed": 42,
            },
        )
        assert response.status_code == 200
        payload = response.json()
        assert payload["state"]["phase"] == "draw1"
        assert payload["state"]["perspective"] == "spectator"

    def test_full_quantum_round_via_http(self, client):
        sid = new_session(client)
        assert client.post(f"/sessions/{sid}/draw", json={"player": 1, "draw": 2}).status_code == 200
        assert client.post(f"/sessions/{sid}/draw", json={"player": 2, "draw": 3}).status_code == 200
        first = client.post(f"/sessions/{sid}/guess", json={"player": 1, "guess": [2, 2]})
        assert first.status_code == 200
        second = client.post(f"/sessions/{sid}/guess", json={"player": 2, "guess": [3, 4]})
        assert second.status_code == 200
        resolved = client.post(f"/sessions/{sid}/resolve", json={})
        assert resolved.status_code == 200
        result = resolved.json()["last_result"]
        assert result["payoffs"]["player1"]["exact"] == "1/21"
        assert result["distribution"][0]["exact"] == "1/3"

    def test_views_are_filtered_per_player(self, client):
        sid = new_session(client)
        client.post(f"/sessions/{sid}/draw", json={"player": 1, "draw": 4})
        own = client.get(f"/sessions/{sid}", params={"as": "player1"}).json()
        other = client.get(f"/sessions/{sid}", params={"as": "player2"}).json()
        spectator = client.get(f"/sessions/{sid}").json()
        assert own["your_draw"] == 4
        assert other["your_draw"] is None
        assert spectator["your_draw"] is None
        assert "hidden" not in json.dumps(other)

    def test_log_endpoint_supports_replay(self, client):
        sid = new_session(
            client,
            players=[
                {"kind": "engine", "policy": "qcg-paper"},
                {"kind": "engine", "policy": "qcg-best-response"},
            ],
            rounds=2,
            seed=5,
        )
        for _ in range(2):
            assert client.post(f"/sessions/{sid}/resolve", json={}).status_code == 200
        text = client.get(f"/sessions/{sid}/log").text
        replayed = replay_log(text)
        view = client.get(f"/sessions/{sid}").json()
        assert replayed.state_view("spectator")["scores"] == view["scores"]


class TestStatusCodes:
    def test_404_unknown_session(self, client):
        assert client.get("/sessions/nope").status_code == 404
        assert client.post("/sessions/nope/draw", json={"player": 1, "draw": 1}).status_code == 404

    def test_400_malformed_body(self, client):
        response = client.post("/sessions", json={"variant": "quantum"})
        assert response.status_code == 400  # players missing
        response = client.post("/sessions", content=b"not json", headers={"content-type": "application/json"})
        assert response.status_code == 400

    def test_400_bad_view_param(self, client):
        sid = new_session(client)
        assert client.get(f"/sessions/{sid}", params={"as": "player9"}).status_code == 400

    def test_403_out_of_turn(self, client):
        sid = new_session(client)
        response = client.post(f"/sessions/{sid}/draw", json={"player": 2, "draw": 1})
        assert response.status_code == 403

    def test_403_acting_for_engine_seat(self, client):
        sid = new_session(
            client,
            players=[{"kind": "human"}, {"kind": "engine", "policy": "qcg-paper"}],
        )
        client.post(f"/sessions/{sid}/draw", json={"player": 1, "draw": 2})
        # engine seat 2 auto-plays; attempting to act for it is forbidden
        response = client.post(f"/sessions/{sid}/draw", json={"player": 2, "draw": 1})
        assert response.status_code == 403

    def test_409_repeat_guess_with_overlap_payload(self, client):
        sid = new_session(client)
        client.post(f"/sessions/{sid}/draw", json={"player": 1, "draw": 2})
        client.post(f"/sessions/{sid}/draw", json={"player": 2, "draw": 2})
        client.post(f"/sessions/{sid}/guess", json={"player": 1, "guess": [2, 2]})
        response = client.post(f"/sessions/{sid}/guess", json={"player": 2, "guess": [2, 2]})
        assert response.status_code == 409
        assert response.json()["overlap_sq"] == "1/1"

    def test_409_semiclassical_repetition(self, client):
        sid = new_session(client, variant="semiclassical")
        client.post(f"/sessions/{sid}/draw", json={"player": 1, "draw": 1})
        client.post(f"/sessions/{sid}/draw", json={"player": 2, "draw": 1})
        client.post(f"/sessions/{sid}/guess", json={"player": 1, "guess": 0})
        response = client.post(f"/sessions/{sid}/guess", json={"player": 2, "guess": 0})
        assert response.status_code == 409

    def test_422_invalid_move_for_variant(self, client):
        sid = new_session(client, variant="classical")
        response = client.post(f"/sessions/{sid}/draw", json={"player": 1, "draw": 9})
        assert response.status_code == 422
        sid = new_session(client)
        response = client.post(f"/sessions/{sid}/draw", json={"player": 1, "draw": 0})
        assert response.status_code == 422

    def test_400_bad_session_config(self, client):
        response = client.post(
            "/sessions",
            json={"variant": "hyperchess", "players": [{"kind": "human"}] * 2, "rounds": 1, "seed": 0},
        )
        assert response.status_code == 400


class TestAnalysisEndpoints:
    def test_scg_tables(self, client):
        payload = client.get("/analysis/scg/tables").json()
        assert len(payload["table1"]["cells"]) == 16

    def test_gram(self, client):
        payload = client.get("/analysis/qcg/gram").json()
        assert len(payload["entries"]) == 256
        diagonal = [e for e in payload["entries"] if e["row"] == e["col"]]
        assert all(e["overlap_sq"] == "1/1" for e in diagonal)

    def test_exhaustive_has_guaranteed_value(self, client):
        payload = client.get("/analysis/qcg/exhaustive").json()
        assert payload["guaranteed_value"] == "11/21"
        assert payload["symmetry_broken"] is True

    def test_admissible_matches_engine(self, client):
        response = client.get("/analysis/qcg/admissible", params={"prior": "(2,2)"})
        assert response.status_code == 200
        payload = response.json()
        assert payload["prior"] == [[2, 2]]
        expected = sorted(list(p) for p in admissible_guesses([(2, 2)]))
        assert payload["admissible"] == expected

    def test_admissible_multiple_priors(self, client):
        response = client.get("/analysis/qcg/admissible", params={"prior": "(2,2),(1,1)"})
        got = {tuple(p) for p in response.json()["admissible"]}
        assert got == admissible_guesses([(2, 2), (1, 1)])

    def test_admissible_rejects_garbage(self, client):
        assert client.get("/analysis/qcg/admissible", params={"prior": "xyz"}).status_code == 400

    def test_admissibility_contract_with_session_rule(self, client):
        """UI contract: a pair is enabled (admissible endpoint) iff the
        server accepts it as player 2's guess (fresh session per probe)."""
        enabled = {
            tuple(p)
            for p in client.get("/analysis/qcg/admissible", params={"prior": "(2,2)"}).json()[
                "admissible"
            ]
        }
        for pair in ORDERED_PAIRS:
            sid = new_session(client, seed=77)
            client.post(f"/sessions/{sid}/draw", json={"player": 1, "draw": 2})
            client.post(f"/sessions/{sid}/draw", json={"player": 2, "draw": 2})
            client.post(f"/sessions/{sid}/guess", json={"player": 1, "guess": [2, 2]})
            response = client.post(
                f"/sessions/{sid}/guess", json={"player": 2, "guess": list(pair)}
            )
            assert (response.status_code == 200) == (pair in enabled)
            if response.status_code != 200:
                assert response.status_code == 409
