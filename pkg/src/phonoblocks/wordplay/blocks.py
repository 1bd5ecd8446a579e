"""Blocks and the word box.

A phoneme block has a fixed phoneme and a context-dependent display
form; a letter block has a fixed letter and a context-dependent
pronunciation.  Every mutation returns a fresh, reflowed box: display
forms and the cached pronunciation always agree with the current block
sequence.  Runs of letter blocks are pronounced as a unit; a phoneme
block contributes its own phoneme and splits the runs around it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal

from phonoblocks import inventory
from phonoblocks.lexicon.lexicon import Lexicon
from phonoblocks.wordplay.render import pronounce_letters, render_phonemes

Mode = Literal["letter", "phoneme"]
DisplayMode = Literal["letters", "creaturesWithLetters", "creaturesOnly"]

DISPLAY_MODES = ("letters", "creaturesWithLetters", "creaturesOnly")


@dataclass(frozen=True)
class Block:
    id: int
    kind: Literal["phoneme", "letter"]
    symbol: str  # the fixed payload: phoneme symbol or single letter
    display_form: str
    creature_glyph: str | None = None

    def __post_init__(self):
        if self.kind == "phoneme":
            if not inventory.is_phoneme(self.symbol):
                raise ValueError(f"unknown phoneme {self.symbol!r}")
        elif self.kind == "letter":
            if len(self.symbol) != 1 or not ("A" <= self.symbol <= "Z"):
                raise ValueError(f"letter blocks hold one of A-Z, got {self.symbol!r}")
        else:
            raise ValueError(f"unknown block kind {self.kind!r}")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "symbol": self.symbol,
            "display_form": self.display_form,
            "creature_glyph": self.creature_glyph,
        }


@dataclass(frozen=True)
class WordBox:
    blocks: tuple[Block, ...] = ()
    mode: Mode = "phoneme"
    display_mode: DisplayMode = "creaturesWithLetters"
    pronunciation: tuple[str, ...] = ()

    def __post_init__(self):
        ids = [b.id for b in self.blocks]
        if len(ids) != len(set(ids)):
            raise ValueError("block ids must be distinct")

    @property
    def text(self) -> str:
        return "".join(b.display_form for b in self.blocks)

    @property
    def chunks(self) -> tuple[str, ...]:
        return tuple(b.display_form for b in self.blocks)

    def next_id(self) -> int:
        return max((b.id for b in self.blocks), default=0) + 1

    def to_json(self) -> dict:
        return {
            "blocks": [b.to_json() for b in self.blocks],
            "mode": self.mode,
            "display_mode": self.display_mode,
            "pronunciation": list(self.pronunciation),
            "text": self.text,
        }


def _glyph(lexicon: Lexicon, block: Block, display_mode: str) -> str | None:
    if block.kind != "phoneme" or display_mode == "letters":
        return None
    return lexicon.creature_for(block.symbol).glyph_id


def reflow(box: WordBox, lexicon: Lexicon) -> WordBox:
    """Recompute context-dependent state; idempotent.

    Phoneme mode recomputes the display form of every phoneme block from
    the full phoneme sequence around it (its phoneme never changes).
    Letter mode leaves display forms alone and refreshes the cached
    pronunciation.  Both are derived purely from the payload sequence.
    """
    blocks = list(box.blocks)
    new_blocks: list[Block] = [None] * len(blocks)  # type: ignore[list-item]

    # runs of consecutive same-kind blocks
    runs: list[tuple[str, int, int]] = []
    i = 0
    while i < len(blocks):
        j = i
        while j < len(blocks) and blocks[j].kind == blocks[i].kind:
            j += 1
        runs.append((blocks[i].kind, i, j))
        i = j

    pronunciation: list[str] = []
    for kind, start, end in runs:
        run = blocks[start:end]
        if kind == "phoneme":
            phonemes = [b.symbol for b in run]
            if box.mode == "phoneme":
                chunks = render_phonemes(phonemes, lexicon)
            else:
                chunks = [b.display_form for b in run]
            pronunciation.extend(phonemes)
            for off, (b, chunk) in enumerate(zip(run, chunks)):
                new_blocks[start + off] = replace(
                    b, display_form=chunk,
                    creature_glyph=_glyph(lexicon, b, box.display_mode))
        else:
            letters = "".join(b.symbol for b in run)
            pronunciation.extend(pronounce_letters(letters, lexicon))
            for off, b in enumerate(run):
                new_blocks[start + off] = replace(
                    b, display_form=b.symbol, creature_glyph=None)
    return WordBox(tuple(new_blocks), box.mode, box.display_mode,
                   tuple(pronunciation))


def new_box(mode: Mode = "phoneme",
            display_mode: DisplayMode = "creaturesWithLetters") -> WordBox:
    return WordBox((), mode, display_mode, ())


def add_block(box: WordBox, kind: str, symbol: str, lexicon: Lexicon,
              index: int | None = None) -> WordBox:
    """Insert a block (at the end by default) and reflow."""
    symbol = symbol.upper()
    display = symbol  # corrected by reflow for phoneme blocks
    block = Block(box.next_id(), kind, symbol, display)  # type: ignore[arg-type]
    blocks = list(box.blocks)
    if index is None:
        index = len(blocks)
    blocks.insert(index, block)
    return reflow(WordBox(tuple(blocks), box.mode, box.display_mode,
                          box.pronunciation), lexicon)


def remove_block(box: WordBox, block_id: int, lexicon: Lexicon) -> WordBox:
    blocks = tuple(b for b in box.blocks if b.id != block_id)
    if len(blocks) == len(box.blocks):
        raise KeyError(f"no block with id {block_id}")
    return reflow(WordBox(blocks, box.mode, box.display_mode,
                          box.pronunciation), lexicon)


def move_block(box: WordBox, block_id: int, index: int, lexicon: Lexicon) -> WordBox:
    blocks = list(box.blocks)
    src = next((i for i, b in enumerate(blocks) if b.id == block_id), None)
    if src is None:
        raise KeyError(f"no block with id {block_id}")
    block = blocks.pop(src)
    index = max(0, min(index, len(blocks)))
    blocks.insert(index, block)
    return reflow(WordBox(tuple(blocks), box.mode, box.display_mode,
                          box.pronunciation), lexicon)


def set_mode(box: WordBox, mode: Mode, lexicon: Lexicon) -> WordBox:
    return reflow(WordBox(box.blocks, mode, box.display_mode,
                          box.pronunciation), lexicon)


def toggle_display(box: WordBox, display_mode: DisplayMode,
                   lexicon: Lexicon) -> WordBox:
    """Presentation-only: chunk strings and payloads are untouched."""
    if display_mode not in DISPLAY_MODES:
        raise ValueError(f"unknown display mode {display_mode!r}")
    blocks = tuple(
        replace(b, creature_glyph=_glyph(lexicon, b, display_mode))
        for b in box.blocks
    )
    return WordBox(blocks, box.mode, display_mode, box.pronunciation)
