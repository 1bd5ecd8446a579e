"""Guided word construction.

A plan fixes the target word's (chunk, phoneme) steps up front; blocks
in this mode have a fixed phoneme and a fixed grapheme.  The five
guidance mechanisms appear as: a reduced keyboard per step (target plus
same-class distractors), sound-by-sound enunciation events, a cue after
repeated misses, rejection of wrong picks (the placed sequence is
always a correct prefix), and preassembly of steps judged too hard
(rare pair or long chunk).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from phonoblocks import inventory
from phonoblocks.lexicon.lexicon import Lexicon
from phonoblocks.lexicon.pairs import chunk_position

EVENT_KINDS = ("enunciate", "offerKeyboard", "cue", "reject", "autoPlace",
               "place", "preassemble", "complete")


class ScaffoldError(ValueError):
    pass


class ProtocolError(ValueError):
    """An action referenced a block that is not on the offered keyboard."""


@dataclass(frozen=True)
class ScaffoldConfig:
    keyboard_size: int = 6
    cue_threshold: int = 2
    auto_threshold: int = 4
    difficulty_percentile: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.keyboard_size < 2:
            raise ScaffoldError("keyboard needs at least the target and one distractor")
        if not (1 <= self.cue_threshold <= self.auto_threshold):
            raise ScaffoldError("need 1 <= cue_threshold <= auto_threshold")


@dataclass(frozen=True)
class KeyboardBlock:
    id: str
    phoneme: str
    chunk: str


@dataclass(frozen=True)
class ScaffoldPlan:
    target_word: str
    steps: tuple[tuple[str, str], ...]  # (chunk, phoneme) per step
    preassembled: tuple[bool, ...]
    config: ScaffoldConfig

    def __post_init__(self):
        if "".join(c for c, _ in self.steps) != self.target_word:
            raise ScaffoldError("step chunks must concatenate to the target word")
        if len(self.preassembled) != len(self.steps):
            raise ScaffoldError("one preassembly decision per step")


@dataclass(frozen=True)
class ScaffoldEvent:
    kind: str
    step_index: int
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ScaffoldError(f"unknown event kind {self.kind!r}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "step_index": self.step_index,
                "detail": dict(self.detail)}


@dataclass(frozen=True)
class ScaffoldState:
    plan: ScaffoldPlan
    step_index: int
    attempts_at_step: int
    placed: tuple[str, ...]
    keyboard: tuple[KeyboardBlock, ...]
    log: tuple[ScaffoldEvent, ...]

    @property
    def complete(self) -> bool:
        return self.step_index >= len(self.plan.steps)

    @property
    def target_block(self) -> KeyboardBlock | None:
        if self.complete:
            return None
        return next(b for b in self.keyboard
                    if b.phoneme == self.plan.steps[self.step_index][1])

    def to_json(self) -> dict:
        return {
            "word": self.plan.target_word,
            "step_index": self.step_index,
            "attempts_at_step": self.attempts_at_step,
            "placed": list(self.placed),
            "complete": self.complete,
            "keyboard": [{"id": b.id, "phoneme": b.phoneme, "chunk": b.chunk}
                         for b in self.keyboard],
        }


def _difficulty_cutoff(lexicon: Lexicon, percentile: float) -> float:
    cache = getattr(lexicon, "_difficulty_cutoffs", None)
    if cache is None:
        cache = lexicon._difficulty_cutoffs = {}
    if percentile not in cache:
        counts = sorted(s.count for s in lexicon.table)
        if not counts:
            cache[percentile] = 0.0
        else:
            idx = int(len(counts) * percentile / 100.0)
            idx = min(max(idx, 0), len(counts) - 1)
            cache[percentile] = counts[idx]
    return cache[percentile]


def plan(word: str, lexicon: Lexicon, config: ScaffoldConfig | None = None) -> ScaffoldPlan:
    """Build the step list and preassembly decisions for a word."""
    config = config or ScaffoldConfig()
    word = word.upper()
    if not word:
        raise ScaffoldError("empty word")
    aligned = lexicon.aligned(word)
    if aligned is None:
        raise ScaffoldError(f"{word!r} is not an alignable lexicon word")
    cutoff = _difficulty_cutoff(lexicon, config.difficulty_percentile)
    steps = tuple(zip(aligned.chunks, aligned.phonemes))
    pre = tuple(
        lexicon.pair_count(p, c) < cutoff or len(c) >= 3
        for c, p in steps
    )
    return ScaffoldPlan(word, steps, pre, config)


def _step_keyboard(st_plan: ScaffoldPlan, step_index: int,
                   lexicon: Lexicon) -> tuple[KeyboardBlock, ...]:
    """Reduced keyboard: the target plus same-class distractors, seeded."""
    chunk, phoneme = st_plan.steps[step_index]
    cfg = st_plan.config
    rng = random.Random(f"{cfg.seed}:{st_plan.target_word}:{step_index}")
    klass = inventory.get(phoneme).klass
    same_class = [s for s in inventory.SYMBOLS
                  if s != phoneme and inventory.get(s).klass == klass]
    others = [s for s in inventory.SYMBOLS
              if s != phoneme and inventory.get(s).klass != klass]
    n_distract = cfg.keyboard_size - 1
    pool = rng.sample(same_class, min(n_distract, len(same_class)))
    if len(pool) < n_distract:
        pool += rng.sample(others, n_distract - len(pool))
    n = len(st_plan.steps)
    pos = chunk_position(step_index, n)
    blocks = [KeyboardBlock(f"s{step_index}t", phoneme, chunk)]
    for i, p in enumerate(pool):
        blocks.append(KeyboardBlock(f"s{step_index}d{i}", p,
                                    lexicon.best_chunk(p, pos)))
    rng.shuffle(blocks)
    return tuple(blocks)


def _advance(state: ScaffoldState, lexicon: Lexicon,
             events: list[ScaffoldEvent]) -> ScaffoldState:
    """Move past the current step, auto-playing preassembled ones."""
    plan_ = state.plan
    idx = state.step_index
    placed = list(state.placed)
    while idx < len(plan_.steps) and plan_.preassembled[idx]:
        chunk, phoneme = plan_.steps[idx]
        events.append(ScaffoldEvent("preassemble", idx,
                                    {"chunk": chunk, "phoneme": phoneme}))
        placed.append(chunk)
        idx += 1
    if idx >= len(plan_.steps):
        events.append(ScaffoldEvent("complete", len(plan_.steps) - 1,
                                    {"word": plan_.target_word}))
        return ScaffoldState(plan_, idx, 0, tuple(placed), (), state.log)
    chunk, phoneme = plan_.steps[idx]
    keyboard = _step_keyboard(plan_, idx, lexicon)
    events.append(ScaffoldEvent("enunciate", idx,
                                {"phoneme": phoneme, "word": plan_.target_word}))
    events.append(ScaffoldEvent("offerKeyboard", idx,
                                {"blocks": [b.id for b in keyboard]}))
    return ScaffoldState(plan_, idx, 0, tuple(placed), keyboard, state.log)


def initial_state(st_plan: ScaffoldPlan, lexicon: Lexicon) -> ScaffoldState:
    events: list[ScaffoldEvent] = []
    seed_state = ScaffoldState(st_plan, 0, 0, (), (), ())
    state = _advance(seed_state, lexicon, events)
    return replace(state, log=tuple(events))


def step(state: ScaffoldState, action: dict, lexicon: Lexicon,
         ) -> tuple[ScaffoldState, list[ScaffoldEvent]]:
    """One learner action: {'pick': block_id} or {'timeout': True}."""
    if state.complete:
        raise ScaffoldError("session already complete")
    plan_ = state.plan
    cfg = plan_.config
    idx = state.step_index
    chunk, phoneme = plan_.steps[idx]
    events: list[ScaffoldEvent] = []

    picked: KeyboardBlock | None = None
    if action.get("timeout"):
        pass  # a timeout counts as a wrong pick
    else:
        block_id = action.get("pick")
        picked = next((b for b in state.keyboard if b.id == block_id), None)
        if picked is None:
            raise ProtocolError(f"block {block_id!r} is not on the keyboard")

    if picked is not None and picked.phoneme == phoneme:
        events.append(ScaffoldEvent("place", idx,
                                    {"chunk": chunk, "block": picked.id}))
        nxt = ScaffoldState(plan_, idx + 1, 0, state.placed + (chunk,),
                            (), state.log)
        nxt = _advance(nxt, lexicon, events)
    else:
        attempts = state.attempts_at_step + 1
        detail = {"picked": picked.id if picked else "timeout"}
        events.append(ScaffoldEvent("reject", idx, detail))
        if attempts >= cfg.auto_threshold:
            events.append(ScaffoldEvent("autoPlace", idx, {"chunk": chunk}))
            nxt = ScaffoldState(plan_, idx + 1, 0, state.placed + (chunk,),
                                (), state.log)
            nxt = _advance(nxt, lexicon, events)
        else:
            if attempts == cfg.cue_threshold:
                target = next(b for b in state.keyboard if b.phoneme == phoneme)
                events.append(ScaffoldEvent("cue", idx, {"target": target.id}))
            nxt = ScaffoldState(plan_, idx, attempts, state.placed,
                                state.keyboard, state.log)

    nxt = replace(nxt, log=nxt.log + tuple(events))
    return nxt, events
