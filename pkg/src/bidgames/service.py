"""HTTP/JSON service: upload games, solve them, and play live sessions.

All state lives in a directory store of JSON documents, one per game and
one per session. A session document records only the inputs (the human's
action per round); the engine's replies are deterministic functions of
the session state, so replaying the inputs through a fresh process
reconstructs the identical session. Per-session requests are serialized
with a lock; games are immutable once uploaded and keyed by content.

Every payload carries a schema marker and budget values travel as
literals ("3", "3*", "top"). Errors come back as {code, message} with a
matching HTTP status.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .budgets import (
    Budget,
    BudgetError,
    format_value,
    opponent_budget,
    parse_value,
)
from .certify import CertReport
from .engine import (
    ActionHalf,
    IllegalBid,
    Session,
    certified_action,
    check_half,
    new_session,
    prepare,
    run_to_outcome,
    step,
)
from .games import (
    BiddingGame,
    GameFormatError,
    SCHEMA_VERSION,
    Value,
    dumps_canonical,
    game_from_dict,
    game_to_dict,
)

DEFAULT_STORE = ".bidgames-store"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _not_found(what: str, ident: str) -> ApiError:
    return ApiError(404, "not_found", f"{what} {ident!r} does not exist")


@dataclass
class GameEntry:
    game: BiddingGame
    doc: dict
    prepared: tuple[dict[str, Value], CertReport] | None = None


@dataclass
class SessionEntry:
    session: Session
    doc: dict
    lock: threading.Lock = field(default_factory=threading.Lock)


class ServiceState:
    """Store-backed caches; everything reloadable from the store directory."""

    def __init__(self, store: str):
        self.store = store
        self.games: dict[str, GameEntry] = {}
        self.sessions: dict[str, SessionEntry] = {}
        self.lock = threading.Lock()
        os.makedirs(os.path.join(store, "games"), exist_ok=True)
        os.makedirs(os.path.join(store, "sessions"), exist_ok=True)

    # -- persistence ----------------------------------------------------

    def _game_path(self, gid: str) -> str:
        return os.path.join(self.store, "games", f"{gid}.json")

    def _session_path(self, sid: str) -> str:
        return os.path.join(self.store, "sessions", f"{sid}.json")

    def _write(self, path: str, doc: dict) -> None:
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as handle:
            handle.write(dumps_canonical(doc))
        os.replace(tmp, path)

    # -- games ----------------------------------------------------------

    def add_game(self, data: dict) -> tuple[str, GameEntry]:
        try:
            game = game_from_dict(data)
        except GameFormatError as exc:
            raise ApiError(400, "invalid_game", str(exc))
        doc = game_to_dict(game)
        gid = hashlib.sha256(dumps_canonical(doc).encode()).hexdigest()[:12]
        with self.lock:
            entry = self.games.get(gid)
            if entry is None:
                entry = GameEntry(game=game, doc=doc)
                self.games[gid] = entry
                self._write(self._game_path(gid), doc)
        return gid, entry

    def get_game(self, gid: str) -> GameEntry:
        with self.lock:
            entry = self.games.get(gid)
        if entry is not None:
            return entry
        path = self._game_path(gid)
        if not os.path.exists(path):
            raise _not_found("game", gid)
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
        entry = GameEntry(game=game_from_dict(doc), doc=doc)
        with self.lock:
            self.games.setdefault(gid, entry)
            return self.games[gid]

    def prepared(self, gid: str) -> tuple[dict[str, Value], CertReport]:
        entry = self.get_game(gid)
        if entry.prepared is None:
            entry.prepared = prepare(entry.game)
        return entry.prepared

    # -- sessions --------------------------------------------------------

    def _build(self, doc: dict) -> Session:
        gid = doc["game"]
        entry = self.get_game(gid)
        session = new_session(
            entry.game,
            human_side=doc["human_side"],
            start=doc["start"],
            p1_budget=parse_value(doc["p1_budget"]),
            horizon=doc["horizon"],
            prepared=self.prepared(gid),
        )
        if doc["human_side"] is None:
            if not session.over:
                run_to_outcome(session)
        else:
            for entry_half in doc["inputs"]:
                step(
                    session,
                    ActionHalf(
                        bid=parse_value(entry_half["bid"]), move=entry_half["move"]
                    ),
                )
        return session

    def add_session(self, doc: dict) -> tuple[str, SessionEntry]:
        sid = uuid.uuid4().hex[:12]
        doc = dict(doc, id=sid, schema=SCHEMA_VERSION, inputs=[])
        try:
            session = self._build(doc)
        except (BudgetError, ValueError) as exc:
            raise ApiError(400, "invalid_session", str(exc))
        entry = SessionEntry(session=session, doc=doc)
        with self.lock:
            self.sessions[sid] = entry
        self._write(self._session_path(sid), doc)
        return sid, entry

    def get_session(self, sid: str) -> SessionEntry:
        with self.lock:
            entry = self.sessions.get(sid)
        if entry is not None:
            return entry
        path = self._session_path(sid)
        if not os.path.exists(path):
            raise _not_found("session", sid)
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
        entry = SessionEntry(session=self._build(doc), doc=doc)
        with self.lock:
            self.sessions.setdefault(sid, entry)
            return self.sessions[sid]

    def record_input(self, sid: str, entry: SessionEntry, half: ActionHalf) -> None:
        entry.doc["inputs"].append(
            {"bid": format_value(half.bid), "move": half.move}
        )
        self._write(self._session_path(sid), entry.doc)


def _session_view(sid: str, entry: SessionEntry) -> dict:
    session = entry.session
    k = session.game.k
    thresholds = {
        vid: format_value(val) for vid, val in sorted(session.thresholds.items())
    }
    hint = None
    if session.human_side is not None and not session.over:
        advice = certified_action(session, session.human_side)
        if advice is not None:
            hint = {"bid": format_value(advice.bid), "move": advice.move}
    return {
        "schema": SCHEMA_VERSION,
        "id": sid,
        "game": entry.doc["game"],
        "k": k,
        "human_side": session.human_side,
        "vertex": session.vertex,
        "p1_budget": format_value(session.p1_budget),
        "p2_budget": format_value(opponent_budget(session.p1_budget, k)),
        "over": session.over,
        "outcome": session.outcome.to_dict() if session.outcome else None,
        "rounds": [r.to_dict() for r in session.rounds],
        "thresholds": thresholds,
        "engine": {
            str(side): {"source": brain.source, "label": brain.label}
            for side, brain in sorted(session.brains.items())
        },
        "hint": hint,
        "horizon": session.horizon,
    }


def _whatif_view(session: Session, bid: Budget) -> dict:
    """Both resolutions of a candidate bid by the human, without commitment."""
    side = session.human_side
    assert side is not None
    own = session.budget_of(side)
    opp = session.budget_of(3 - side)
    view: dict = {"schema": SCHEMA_VERSION, "bid": format_value(bid)}
    probe = ActionHalf(bid=bid, move=session.game.neighbors(session.vertex)[0])
    reason = check_half(session, side, probe)
    if reason is not None:
        view.update({"legal": False, "reason": reason, "if_win": None, "if_lose": None})
        return view
    win_own = Budget(own.level - bid.level)
    win_opp = Budget(opp.level + bid.level)
    beat: int | None = None
    for level in range(opp.level + 1):
        if level % 2 == 1 and not opp.advantage:
            continue
        if level > bid.level or (level == bid.level and own.advantage):
            beat = level
            break
    if beat is None:
        lose = None
    else:
        lose = {
            "paid": format_value(Budget(beat)),
            "you": format_value(Budget(own.level + beat)),
            "opponent": format_value(Budget(opp.level - beat)),
        }
    view.update(
        {
            "legal": True,
            "reason": None,
            "if_win": {
                "you": format_value(win_own),
                "opponent": format_value(win_opp),
            },
            "if_lose": lose,
        }
    )
    return view


def build_app(store: str | None = None) -> FastAPI:
    state = ServiceState(store or os.environ.get("BIDGAMES_STORE", DEFAULT_STORE))
    app = FastAPI(title="bidgames", version="1.0")
    app.state.bidgames = state

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content={
                "schema": SCHEMA_VERSION,
                "code": exc.code,
                "message": exc.message,
            },
        )

    @app.post("/games")
    async def post_game(request: Request) -> JSONResponse:
        try:
            data = await request.json()
        except json.JSONDecodeError as exc:
            raise ApiError(400, "invalid_json", str(exc))
        gid, entry = state.add_game(data)
        return JSONResponse(
            {"schema": SCHEMA_VERSION, "id": gid, "game": entry.doc}
        )

    @app.get("/games/{gid}")
    async def get_game(gid: str) -> JSONResponse:
        entry = state.get_game(gid)
        return JSONResponse(
            {"schema": SCHEMA_VERSION, "id": gid, "game": entry.doc}
        )

    @app.get("/games/{gid}/thresholds")
    async def get_thresholds(gid: str) -> JSONResponse:
        tmap, report = state.prepared(gid)
        return JSONResponse(
            {
                "schema": SCHEMA_VERSION,
                "id": gid,
                "thresholds": {
                    vid: format_value(val) for vid, val in sorted(tmap.items())
                },
                "certification": report.verdict,
            }
        )

    @app.post("/sessions")
    async def post_session(request: Request) -> JSONResponse:
        try:
            data = await request.json()
        except json.JSONDecodeError as exc:
            raise ApiError(400, "invalid_json", str(exc))
        if not isinstance(data, dict):
            raise ApiError(400, "invalid_session", "body must be an object")
        gid = data.get("game")
        if not isinstance(gid, str):
            raise ApiError(400, "invalid_session", "field 'game' must be a game id")
        state.get_game(gid)
        human = data.get("human_side")
        if human not in (None, 1, 2):
            raise ApiError(400, "invalid_session", "human_side must be 1, 2 or null")
        doc = {
            "game": gid,
            "human_side": human,
            "start": data.get("start"),
            "p1_budget": data.get("p1_budget"),
            "horizon": data.get("horizon", 64),
        }
        if not isinstance(doc["start"], str):
            raise ApiError(400, "invalid_session", "field 'start' must be a vertex id")
        if not isinstance(doc["p1_budget"], str):
            raise ApiError(
                400, "invalid_session", "field 'p1_budget' must be a budget literal"
            )
        if not isinstance(doc["horizon"], int) or isinstance(doc["horizon"], bool):
            raise ApiError(400, "invalid_session", "field 'horizon' must be an integer")
        try:
            budget = parse_value(doc["p1_budget"])
        except BudgetError as exc:
            raise ApiError(400, "invalid_session", str(exc))
        if not isinstance(budget, Budget):
            raise ApiError(400, "invalid_session", "p1_budget cannot be top")
        sid, entry = state.add_session(doc)
        return JSONResponse(_session_view(sid, entry))

    @app.get("/sessions/{sid}")
    async def get_session(sid: str) -> JSONResponse:
        entry = state.get_session(sid)
        with entry.lock:
            return JSONResponse(_session_view(sid, entry))

    @app.post("/sessions/{sid}/bid")
    async def post_bid(sid: str, request: Request) -> JSONResponse:
        entry = state.get_session(sid)
        try:
            data = await request.json()
        except json.JSONDecodeError as exc:
            raise ApiError(400, "invalid_json", str(exc))
        if not isinstance(data, dict):
            raise ApiError(400, "invalid_bid", "body must be an object")
        with entry.lock:
            session = entry.session
            if session.human_side is None:
                raise ApiError(409, "no_human_side", "this session plays itself")
            if session.over:
                raise ApiError(409, "session_over", "the play has ended")
            literal = data.get("bid")
            move = data.get("move")
            if not isinstance(literal, str) or not isinstance(move, str):
                raise ApiError(
                    400, "invalid_bid", "fields 'bid' and 'move' must be strings"
                )
            try:
                bid = parse_value(literal)
            except BudgetError as exc:
                raise ApiError(400, "invalid_bid", str(exc))
            if not isinstance(bid, Budget):
                raise ApiError(400, "illegal_bid", "top is not biddable")
            half = ActionHalf(bid=bid, move=move)
            try:
                record = step(session, half)
            except IllegalBid as exc:
                raise ApiError(400, "illegal_bid", exc.reason)
            state.record_input(sid, entry, half)
            return JSONResponse(
                {
                    "schema": SCHEMA_VERSION,
                    "round": record.to_dict(),
                    "state": _session_view(sid, entry),
                }
            )

    @app.get("/sessions/{sid}/log")
    async def get_log(sid: str) -> PlainTextResponse:
        entry = state.get_session(sid)
        with entry.lock:
            lines = [
                json.dumps(r.to_dict(), sort_keys=True)
                for r in entry.session.rounds
            ]
        body = "\n".join(lines)
        if body:
            body += "\n"
        return PlainTextResponse(body, media_type="application/x-ndjson")

    @app.get("/sessions/{sid}/whatif")
    async def get_whatif(sid: str, bid: str) -> JSONResponse:
        entry = state.get_session(sid)
        with entry.lock:
            session = entry.session
            if session.human_side is None:
                raise ApiError(409, "no_human_side", "this session plays itself")
            if session.over:
                raise ApiError(409, "session_over", "the play has ended")
            try:
                value = parse_value(bid)
            except BudgetError as exc:
                raise ApiError(400, "invalid_bid", str(exc))
            if not isinstance(value, Budget):
                return JSONResponse(
                    {
                        "schema": SCHEMA_VERSION,
                        "bid": "top",
                        "legal": False,
                        "reason": "top is not biddable",
                        "if_win": None,
                        "if_lose": None,
                    }
                )
            return JSONResponse(_whatif_view(session, value))

    return app
