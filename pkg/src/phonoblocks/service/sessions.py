"""In-memory sessions with append-only JSON Lines logs.

A session's state lives in memory; every mutating action is appended to
its log before the response is produced, so replaying the log through
the same pure transition functions reconstructs the state exactly.  All
randomness is seeded at creation, never drawn from the wall clock.
"""

from __future__ import annotations

import datetime as dt
import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from phonoblocks.lexicon.lexicon import Lexicon
from phonoblocks.scaffold import (
    ProtocolError,
    ScaffoldState,
    initial_state,
    plan as scaffold_plan,
    step as scaffold_step,
)
from phonoblocks.service import minigame as mg
from phonoblocks.service.config import ServiceConfig
from phonoblocks.wordplay import (
    WordBox,
    add_block,
    interpret,
    move_block,
    new_box,
    remove_block,
    set_mode,
    toggle_display,
)

SCHEMA_VERSION = 1
KINDS = ("freeplay", "scaffolded", "minigame")


class SessionError(ValueError):
    pass


class ReplayError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Session:
    id: str
    kind: str
    state: object
    created_at: str
    log_path: Path
    lock: threading.Lock = field(default_factory=threading.Lock)


def _create_state(kind: str, params: dict, lexicon: Lexicon,
                  config: ServiceConfig):
    if kind == "freeplay":
        mode = params.get("mode", "phoneme")
        display_mode = params.get("display_mode", "creaturesWithLetters")
        if mode not in ("phoneme", "letter"):
            raise SessionError(f"unknown mode {mode!r}")
        return new_box(mode=mode, display_mode=display_mode)
    if kind == "scaffolded":
        word = params.get("word")
        if not word:
            raise SessionError("scaffolded sessions need a word")
        cfg = config.scaffold_config(params.get("seed"))
        return initial_state(scaffold_plan(word, lexicon, cfg), lexicon)
    if kind == "minigame":
        child = params.get("child_id")
        if not child:
            raise SessionError("minigame sessions need a child_id")
        return mg.start_minigame(child, int(params.get("session", 1)),
                                 int(params.get("seed", 0)), lexicon)
    raise SessionError(f"unknown session kind {kind!r}")


def _apply_action(kind: str, state, action: dict, lexicon: Lexicon,
                  config: ServiceConfig):
    """Pure transition: (state, action) -> (state, response payload)."""
    atype = action.get("type")
    if kind == "freeplay":
        box: WordBox = state
        if atype == "place":
            index = action.get("index")
            box = add_block(box, action.get("kind", box.mode),
                            action["symbol"], lexicon,
                            index=None if index is None else int(index))
        elif atype == "remove":
            box = remove_block(box, int(action["block_id"]), lexicon)
        elif atype == "move":
            box = move_block(box, int(action["block_id"]),
                             int(action["index"]), lexicon)
        elif atype == "toggle_display":
            box = toggle_display(box, action["display_mode"], lexicon)
        elif atype == "set_mode":
            box = set_mode(box, action["mode"], lexicon)
        else:
            raise SessionError(f"unknown freeplay action {atype!r}")
        return box, {"box": box.to_json()}
    if kind == "scaffolded":
        st: ScaffoldState = state
        if atype == "pick":
            st, events = scaffold_step(st, {"pick": action["block_id"]}, lexicon)
        elif atype == "timeout":
            st, events = scaffold_step(st, {"timeout": True}, lexicon)
        else:
            raise SessionError(f"unknown scaffolded action {atype!r}")
        return st, {"events": [e.to_json() for e in events],
                    "state": st.to_json()}
    if kind == "minigame":
        if atype != "answer":
            raise SessionError(f"unknown minigame action {atype!r}")
        st, outcome = mg.answer(state, action["symbol"],
                                int(action["time_ms"]), lexicon)
        return st, outcome
    raise SessionError(f"unknown session kind {kind!r}")


class SessionStore:
    def __init__(self, lexicon: Lexicon, config: ServiceConfig):
        self.lexicon = lexicon
        self.config = config
        self.log_dir = Path(config.log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._store_lock = threading.Lock()

    def _append(self, session: Session, entry: dict) -> None:
        line = json.dumps(entry, separators=(",", ":"))
        with session.log_path.open("a") as fh:
            fh.write(line + "\n")

    def create(self, kind: str, params: dict) -> Session:
        if kind not in KINDS:
            raise SessionError(f"unknown session kind {kind!r}")
        state = _create_state(kind, params, self.lexicon, self.config)
        sid = uuid.uuid4().hex[:12]
        created = dt.datetime.now(dt.timezone.utc).isoformat()
        session = Session(sid, kind, state, created,
                          self.log_dir / f"{sid}.jsonl")
        with self._store_lock:
            self._sessions[sid] = session
        self._append(session, {"v": SCHEMA_VERSION, "ts": created,
                               "type": "create", "kind": kind,
                               "params": params})
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise SessionError(f"no session {session_id!r}") from None

    def apply(self, session_id: str, action: dict) -> dict:
        session = self.get(session_id)
        with session.lock:  # actions on one session are serialized
            state, payload = _apply_action(session.kind, session.state,
                                           action, self.lexicon, self.config)
            self._append(session, {
                "v": SCHEMA_VERSION,
                "ts": dt.datetime.now(dt.timezone.utc).isoformat(),
                "type": "action",
                "action": action,
            })
            session.state = state
        return payload

    def query_interpret(self, session_id: str, k: int = 5) -> list[dict]:
        session = self.get(session_id)
        if session.kind != "freeplay":
            raise SessionError("interpretation applies to freeplay sessions")
        box: WordBox = session.state
        cfg = self.config.interpreter_config()
        results = interpret(box.blocks, self.lexicon, k, cfg)
        return [{"word": r.word, "phonemes": list(r.phonemes),
                 "score": r.score, "channel": r.channel} for r in results]


def replay(log_path: str | Path, lexicon: Lexicon,
           config: ServiceConfig):
    """Rebuild a session's final state from its log alone."""
    path = Path(log_path)
    state = None
    kind = None
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            entry = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ReplayError(f"corrupt JSON ({exc.msg})", lineno) from None
        if entry.get("v") != SCHEMA_VERSION:
            raise ReplayError("unknown schema version", lineno)
        etype = entry.get("type")
        if etype == "create":
            kind = entry["kind"]
            state = _create_state(kind, entry["params"], lexicon, config)
        elif etype == "action":
            if state is None:
                raise ReplayError("action before create", lineno)
            state, _ = _apply_action(kind, state, entry["action"],
                                     lexicon, config)
        else:
            raise ReplayError(f"unknown entry type {etype!r}", lineno)
    return state
