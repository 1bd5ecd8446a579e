"""Sound-creature registry: one mnemonic character per phoneme.

Names, actions, and glyph placeholders come from a bundled data file
(authored for this artifact).  Each creature's grapheme forms are the
chunks its phoneme has inside the top-N pair table; a phoneme with no
top-N pair falls back to its single most frequent chunk overall.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from phonoblocks import inventory
from phonoblocks.lexicon.pairs import PairStat


@dataclass(frozen=True)
class CreatureSpec:
    phoneme: str
    name: str
    action: str
    glyph_id: str
    grapheme_forms: tuple[str, ...]

    def __post_init__(self):
        if not self.grapheme_forms:
            raise ValueError(f"{self.phoneme}: creature needs at least one form")


def _load_roster() -> dict[str, dict]:
    return json.loads(
        resources.files("phonoblocks.data").joinpath("creatures.json").read_text()
    )


def creature_registry(table: list[PairStat], top_n: int = 80) -> list[CreatureSpec]:
    """Build the full 39-creature registry from a pair table."""
    roster = _load_roster()
    top = table[:top_n]
    forms: dict[str, list[str]] = {}
    for stat in top:
        forms.setdefault(stat.phoneme, []).append(stat.chunk)
    specs = []
    for symbol in inventory.SYMBOLS:
        info = roster[symbol]
        chunk_list = forms.get(symbol)
        if not chunk_list:
            best = [s for s in table if s.phoneme == symbol]
            if best:
                chunk_list = [best[0].chunk]
            else:
                # phoneme absent from the training corpus entirely
                chunk_list = [info["default_form"]]
        specs.append(CreatureSpec(symbol, info["name"], info["action"],
                                  info["glyph_id"], tuple(chunk_list)))
    return specs


def registry_to_json(specs: list[CreatureSpec]) -> list[dict]:
    return [
        {"phoneme": s.phoneme, "name": s.name, "action": s.action,
         "glyph_id": s.glyph_id, "grapheme_forms": list(s.grapheme_forms)}
        for s in specs
    ]


def registry_from_json(rows: list[dict]) -> list[CreatureSpec]:
    return [
        CreatureSpec(r["phoneme"], r["name"], r["action"], r["glyph_id"],
                     tuple(r["grapheme_forms"]))
        for r in rows
    ]
