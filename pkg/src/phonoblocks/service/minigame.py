"""Live sound-finding minigame engine.

Both minigame keyboards are alphabetic A-Z grids with identical
geometry; the creature condition shows, in each letter's cell, the
creature of the phoneme that letter most often spells.  A key is
correct for a prompted phoneme when its letter's dominant phoneme is
that phoneme (so [k] accepts both C and K).  Three misses censor the
trial.  The client supplies elapsed time; the engine records it only
for found phonemes.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, replace

from phonoblocks import inventory
from phonoblocks.layout import alphabetic_layout
from phonoblocks.lexicon.lexicon import Lexicon
from phonoblocks.study.design import design_trials
from phonoblocks.study.types import MAX_ATTEMPTS, TrialRecord, TrialSpec

LETTERS = tuple(string.ascii_uppercase)


class MinigameError(ValueError):
    pass


def dominant_phoneme(letter: str, lexicon: Lexicon) -> str | None:
    scores = lexicon.phoneme_scores_for_chunk(letter)
    if not scores:
        return None
    return min(scores.items(), key=lambda kv: (-kv[1], kv[0]))[0]


def letter_assignment(lexicon: Lexicon) -> dict[str, str]:
    """letter -> dominant phoneme, for the creature-condition cells."""
    out = {}
    for letter in LETTERS:
        p = dominant_phoneme(letter, lexicon)
        if p is not None:
            out[letter] = p
    return out


def keyboard_json(lexicon: Lexicon, condition: str) -> dict:
    grid = alphabetic_layout(list(LETTERS), cols=7)
    assignment = letter_assignment(lexicon)
    cells = []
    for letter in LETTERS:
        row, col = grid.cells[letter]
        cell = {"symbol": letter, "row": row, "col": col}
        phoneme = assignment.get(letter)
        if condition == "creature" and phoneme is not None:
            creature = lexicon.creature_for(phoneme)
            cell.update({"phoneme": phoneme, "glyph_id": creature.glyph_id,
                         "creature": creature.name})
        cells.append(cell)
    return {"condition": condition, "rows": grid.rows, "cols": grid.cols,
            "cells": cells}


@dataclass(frozen=True)
class MinigameState:
    child_id: str
    session_number: int
    trials: tuple[TrialSpec, ...]
    current: int
    attempts: int
    records: tuple[TrialRecord, ...]

    @property
    def done(self) -> bool:
        return self.current >= len(self.trials)

    @property
    def current_trial(self) -> TrialSpec | None:
        return None if self.done else self.trials[self.current]

    def prompt(self, lexicon: Lexicon) -> dict | None:
        trial = self.current_trial
        if trial is None:
            return None
        creature = lexicon.creature_for(trial.phoneme)
        return {
            "phoneme": trial.phoneme,
            "ipa": inventory.get(trial.phoneme).ipa,
            "condition": trial.condition,
            "practice": trial.is_practice,
            "index": self.current,
            "total": len(self.trials),
            "creature": {"name": creature.name, "action": creature.action,
                         "glyph_id": creature.glyph_id},
        }

    def to_json(self, lexicon: Lexicon) -> dict:
        return {
            "child_id": self.child_id,
            "session": self.session_number,
            "done": self.done,
            "attempts": self.attempts,
            "completed_trials": len(self.records),
            "total_trials": len(self.trials),
            "prompt": self.prompt(lexicon),
        }


def start_minigame(child_id: str, session_number: int, seed: int,
                   lexicon: Lexicon) -> MinigameState:
    if session_number not in (1, 2):
        raise MinigameError("session must be 1 or 2")
    schedule = [t for t in design_trials([child_id], seed=seed)
                if t.session == session_number]
    assignment = letter_assignment(lexicon)
    reachable = set(assignment.values())
    for t in schedule:
        if t.phoneme not in reachable:
            raise MinigameError(f"no keyboard letter is dominated by {t.phoneme}")
    return MinigameState(child_id, session_number, tuple(schedule), 0, 0, ())


def answer(state: MinigameState, symbol: str, time_ms: int,
           lexicon: Lexicon) -> tuple[MinigameState, dict]:
    """One key press.  The client measures prompt-to-press time."""
    if state.done:
        raise MinigameError("minigame already finished")
    symbol = symbol.upper()
    if symbol not in LETTERS:
        raise MinigameError(f"not a keyboard letter: {symbol!r}")
    if time_ms < 0:
        raise MinigameError("time must be non-negative")
    trial = state.current_trial
    correct = dominant_phoneme(symbol, lexicon) == trial.phoneme
    if correct:
        # a same-millisecond tap still took nonzero time
        record = TrialRecord(trial, state.attempts, False,
                             max(time_ms, 1) / 1000.0)
        nxt = replace(state, current=state.current + 1, attempts=0,
                      records=state.records + (record,))
        outcome = {"correct": True, "errors": record.errors, "censored": False}
    else:
        attempts = state.attempts + 1
        if attempts >= MAX_ATTEMPTS:
            record = TrialRecord(trial, MAX_ATTEMPTS, True, None)
            nxt = replace(state, current=state.current + 1, attempts=0,
                          records=state.records + (record,))
            outcome = {"correct": False, "errors": MAX_ATTEMPTS, "censored": True}
        else:
            nxt = replace(state, attempts=attempts)
            outcome = {"correct": False, "attempts": attempts, "censored": False}
    outcome["done"] = nxt.done
    outcome["prompt"] = nxt.prompt(lexicon)
    return nxt, outcome
