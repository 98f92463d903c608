#!/usr/bin/env python3
"""Record HTTP fixtures for the browser playground tests.

Drives the real service in-process through a scripted session: the human
plays player 2 on the bundled reachability game from vertex v0 with
player 1 holding 4 (below the threshold 5), follows the displayed hints,
and reaches a provisional player-2 win at the horizon. Every response the
frontend consumes is dumped as JSON under frontend/fixtures/, with the
random session id rewritten to a stable placeholder.
"""

from __future__ import annotations

import json
import pathlib
import sys
import tempfile

from fastapi.testclient import TestClient

from bidgames.service import build_app

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "frontend" / "fixtures"
SESSION_ID = "fixture-session"


def scrub(doc, sid: str):
    text = json.dumps(doc, sort_keys=True)
    return json.loads(text.replace(sid, SESSION_ID))


def dump(name: str, doc) -> None:
    path = FIXTURES / name
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path.relative_to(ROOT)}")


def main() -> int:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    game_doc = json.loads((ROOT / "games" / "fixa.game").read_text())
    client = TestClient(build_app(tempfile.mkdtemp(prefix="fixtures-")))

    uploaded = client.post("/games", json=game_doc).json()
    gid = uploaded["id"]
    dump("game_upload.json", uploaded)
    dump("thresholds.json", client.get(f"/games/{gid}/thresholds").json())

    created = client.post(
        "/sessions",
        json={
            "game": gid,
            "human_side": 2,
            "start": "v0",
            "p1_budget": "4",
            "horizon": 6,
        },
    ).json()
    sid = created["id"]
    dump("session_start.json", scrub(created, sid))

    bad = client.post(f"/sessions/{sid}/bid", json={"bid": "3", "move": "v0"})
    assert bad.status_code == 400, bad.text
    dump("illegal_bid.json", scrub(bad.json(), sid))

    whatif = client.get(f"/sessions/{sid}/whatif", params={"bid": "0"})
    dump("whatif.json", scrub(whatif.json(), sid))

    steps = []
    while True:
        state = client.get(f"/sessions/{sid}").json()
        if state["over"]:
            break
        hint = state["hint"]
        assert hint is not None, "the scripted session must keep a certified hint"
        reply = client.post(f"/sessions/{sid}/bid", json=hint)
        assert reply.status_code == 200, reply.text
        steps.append({"request": hint, "response": scrub(reply.json(), sid)})
    dump("steps.json", steps)

    final = client.get(f"/sessions/{sid}").json()
    assert final["outcome"]["winner"] == 2, final["outcome"]
    dump("final_state.json", scrub(final, sid))

    log = client.get(f"/sessions/{sid}/log").text
    (FIXTURES / "log.ndjson").write_text(log)
    print(f"wrote {(FIXTURES / 'log.ndjson').relative_to(ROOT)}")
    print(f"scripted session: {len(steps)} rounds, player 2 wins at the horizon")
    return 0


if __name__ == "__main__":
    sys.exit(main())
