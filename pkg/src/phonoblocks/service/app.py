"""HTTP/JSON API for the playground and the live minigame."""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field

from phonoblocks import __version__, inventory
from phonoblocks.layout import alphabetic_layout, phoneme_keyboard
from phonoblocks.lexicon.lexicon import Lexicon
from phonoblocks.scaffold import ProtocolError, ScaffoldError
from phonoblocks.service import minigame as mg
from phonoblocks.service.config import ServiceConfig, load_config
from phonoblocks.service.minigame import MinigameError
from phonoblocks.service.sessions import SessionError, SessionStore

API_VERSION = 1


class CreateSession(BaseModel):
    model_config = ConfigDict(extra="forbid")
    kind: str
    word: str | None = None
    mode: str | None = None
    display_mode: str | None = None
    seed: int | None = None


class PlaceBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    block_id: str | int | None = None
    symbol: str | None = None
    kind: str | None = None
    index: int | None = None
    timeout: bool = False


class ToggleBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    display_mode: str


class InterpretBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    k: int = Field(default=5, ge=1, le=50)


class MinigameStart(BaseModel):
    model_config = ConfigDict(extra="forbid")
    child_id: str
    session: int = 1
    seed: int = 0


class AnswerBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    symbol: str
    time_ms: int = Field(ge=0)


def _wrap(payload: dict) -> dict:
    return {"api_version": API_VERSION, **payload}


def create_app(lexicon: Lexicon, config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    store = SessionStore(lexicon, config)
    app = FastAPI(title="phonoblocks", version=__version__)
    app.state.store = store
    app.state.lexicon = lexicon

    def fail(exc: Exception, code: int = 400):
        raise HTTPException(status_code=code, detail=str(exc))

    @app.get("/health")
    def health():
        return _wrap({"status": "ok", "lexicon_words": len(lexicon)})

    @app.get("/keyboard")
    def keyboard(mode: str = "phoneme", condition: str = "letter"):
        if mode == "phoneme":
            grid = phoneme_keyboard(config.grid_rows, config.grid_cols,
                                    method=config.mds_method, seed=config.seed)
            cells = []
            for sym, (row, col) in sorted(grid.cells.items()):
                creature = lexicon.creature_for(sym)
                cells.append({
                    "symbol": sym, "row": row, "col": col,
                    "ipa": inventory.get(sym).ipa,
                    "klass": inventory.get(sym).klass,
                    "group": grid.group_of.get(sym),
                    "glyph_id": creature.glyph_id,
                    "creature": creature.name,
                    "forms": list(creature.grapheme_forms),
                })
            return _wrap({"mode": mode, "rows": grid.rows, "cols": grid.cols,
                          "cells": cells})
        if mode == "letter":
            grid = alphabetic_layout(list(mg.LETTERS), cols=7)
            cells = [{"symbol": s, "row": r, "col": c}
                     for s, (r, c) in sorted(grid.cells.items())]
            return _wrap({"mode": mode, "rows": grid.rows, "cols": grid.cols,
                          "cells": cells})
        if mode == "alphabetic":
            if condition not in ("letter", "creature"):
                fail(ValueError(f"unknown condition {condition!r}"))
            return _wrap({"mode": mode, **mg.keyboard_json(lexicon, condition)})
        fail(ValueError(f"unknown keyboard mode {mode!r}"))

    @app.post("/session")
    def create_session(body: CreateSession):
        params = {k: v for k, v in body.model_dump().items()
                  if k != "kind" and v is not None}
        try:
            session = store.create(body.kind, params)
        except (SessionError, ScaffoldError, MinigameError) as exc:
            fail(exc)
        return _wrap({"session_id": session.id, "kind": session.kind,
                      **_state_json(session)})

    def _state_json(session) -> dict:
        if session.kind == "freeplay":
            return {"state": session.state.to_json()}
        if session.kind == "scaffolded":
            return {"state": session.state.to_json(),
                    "events": [e.to_json() for e in session.state.log]}
        return {"state": session.state.to_json(lexicon)}

    @app.get("/session/{session_id}")
    def get_session(session_id: str):
        try:
            session = store.get(session_id)
        except SessionError as exc:
            fail(exc, 404)
        return _wrap({"session_id": session.id, "kind": session.kind,
                      **_state_json(session)})

    @app.post("/session/{session_id}/place")
    def place(session_id: str, body: PlaceBody):
        try:
            session = store.get(session_id)
        except SessionError as exc:
            fail(exc, 404)
        try:
            if session.kind == "scaffolded":
                if body.timeout:
                    action = {"type": "timeout"}
                else:
                    action = {"type": "pick", "block_id": str(body.block_id)}
            elif session.kind == "freeplay":
                if body.symbol is None:
                    fail(SessionError("freeplay placement needs a symbol"))
                action = {"type": "place", "symbol": body.symbol}
                if body.kind is not None:
                    action["kind"] = body.kind
                if body.index is not None:
                    action["index"] = body.index
            else:
                fail(SessionError("use /minigame endpoints for minigame sessions"))
            return _wrap(store.apply(session_id, action))
        except ProtocolError as exc:
            fail(exc, 409)
        except (SessionError, ScaffoldError, KeyError, ValueError) as exc:
            fail(exc)

    @app.post("/session/{session_id}/toggle-display")
    def toggle(session_id: str, body: ToggleBody):
        try:
            store.get(session_id)
            return _wrap(store.apply(session_id, {
                "type": "toggle_display", "display_mode": body.display_mode}))
        except SessionError as exc:
            fail(exc, 404)
        except ValueError as exc:
            fail(exc)

    @app.post("/session/{session_id}/interpret")
    def interpret_box(session_id: str, body: InterpretBody):
        try:
            return _wrap({"interpretations":
                          store.query_interpret(session_id, body.k)})
        except SessionError as exc:
            fail(exc, 404)

    @app.post("/minigame/start")
    def minigame_start(body: MinigameStart):
        try:
            session = store.create("minigame", body.model_dump())
        except (SessionError, MinigameError) as exc:
            fail(exc)
        trial = session.state.current_trial
        return _wrap({
            "session_id": session.id,
            "state": session.state.to_json(lexicon),
            "keyboard": mg.keyboard_json(lexicon, trial.condition),
        })

    @app.post("/minigame/{session_id}/answer")
    def minigame_answer(session_id: str, body: AnswerBody):
        try:
            session = store.get(session_id)
        except SessionError as exc:
            fail(exc, 404)
        if session.kind != "minigame":
            fail(SessionError("not a minigame session"))
        try:
            payload = store.apply(session_id, {
                "type": "answer", "symbol": body.symbol,
                "time_ms": body.time_ms})
        except MinigameError as exc:
            fail(exc)
        nxt = payload.get("prompt")
        if nxt is not None:
            payload["keyboard"] = mg.keyboard_json(lexicon, nxt["condition"])
        return _wrap(payload)

    @app.get("/minigame/{session_id}/records")
    def minigame_records(session_id: str):
        try:
            session = store.get(session_id)
        except SessionError as exc:
            fail(exc, 404)
        if session.kind != "minigame":
            fail(SessionError("not a minigame session"))
        return _wrap({"records": [r.to_json() for r in session.state.records],
                      "done": session.state.done})

    if config.playground_dir:
        playground = Path(config.playground_dir)
        if playground.is_dir():
            app.mount("/playground",
                      StaticFiles(directory=playground, html=True),
                      name="playground")

    return app


def build_app_from_config(config_path: str | None = None) -> FastAPI:
    """Entry point for serving: loads artifacts, fails with guidance."""
    config = load_config(config_path)
    if config.artifacts_dir is None:
        raise RuntimeError(
            "no artifacts_dir configured; run `phonoblocks build-lexicon "
            "--dict bundled --out artifacts` and point artifacts_dir at it")
    art = Path(config.artifacts_dir)
    if not (art / "manifest.json").exists():
        raise RuntimeError(
            f"{art} has no lexicon artifacts; run `phonoblocks build-lexicon "
            f"--dict bundled --out {art}` first")
    lexicon = Lexicon.load_artifacts(art)
    return create_app(lexicon, config)
