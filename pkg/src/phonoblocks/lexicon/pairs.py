"""Pair-frequency tables over aligned entries.

A pair is (phoneme, grapheme chunk).  Counts are split by the chunk's
position within the word: initial (first chunk; a one-chunk word counts
here), final (last chunk), medial (anything else).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from phonoblocks.lexicon.alignment import AlignedEntry

POSITIONS = ("initial", "medial", "final")


@dataclass(frozen=True)
class PairStat:
    phoneme: str
    chunk: str
    count: int
    initial: int
    medial: int
    final: int

    def __post_init__(self):
        if self.count != self.initial + self.medial + self.final:
            raise ValueError(f"{self.phoneme}->{self.chunk}: positional counts "
                             f"do not sum to total")
        if self.count < 1:
            raise ValueError(f"{self.phoneme}->{self.chunk}: count must be >= 1")

    def positional(self, position: str) -> int:
        return {"initial": self.initial, "medial": self.medial,
                "final": self.final}[position]


def chunk_position(index: int, n_chunks: int) -> str:
    if index == 0:
        return "initial"
    if index == n_chunks - 1:
        return "final"
    return "medial"


def pair_table(aligned: list[AlignedEntry]) -> list[PairStat]:
    """Aggregate pair counts over aligned entries.

    Callers pass primary-variant alignments only, so repeated dictionary
    variants do not double-count a word.  Output is sorted by count
    descending, ties by (phoneme, chunk).
    """
    if not aligned:
        raise ValueError("no aligned entries")
    acc: dict[tuple[str, str], list[int]] = {}
    for entry in aligned:
        n = len(entry.chunks)
        for idx, (p, c) in enumerate(zip(entry.phonemes, entry.chunks)):
            counts = acc.setdefault((p, c), [0, 0, 0])
            pos = chunk_position(idx, n)
            counts[POSITIONS.index(pos)] += 1
    stats = [
        PairStat(p, c, sum(v), v[0], v[1], v[2])
        for (p, c), v in acc.items()
    ]
    stats.sort(key=lambda s: (-s.count, s.phoneme, s.chunk))
    return stats


def top_pairs(table: list[PairStat], n: int) -> list[PairStat]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return table[:n]


def table_to_tsv(table: list[PairStat]) -> str:
    lines = ["phoneme\tchunk\tcount\tinitial\tmedial\tfinal"]
    for s in table:
        lines.append(f"{s.phoneme}\t{s.chunk}\t{s.count}\t{s.initial}\t{s.medial}\t{s.final}")
    return "\n".join(lines) + "\n"


def table_to_json(table: list[PairStat]) -> list[dict]:
    return [
        {"phoneme": s.phoneme, "chunk": s.chunk, "count": s.count,
         "initial": s.initial, "medial": s.medial, "final": s.final}
        for s in table
    ]


def table_from_json(rows: list[dict]) -> list[PairStat]:
    return [
        PairStat(r["phoneme"], r["chunk"], r["count"],
                 r["initial"], r["medial"], r["final"])
        for r in rows
    ]


def save_table(table: list[PairStat], tsv_path: str | Path, json_path: str | Path) -> None:
    Path(tsv_path).write_text(table_to_tsv(table))
    Path(json_path).write_text(json.dumps(table_to_json(table), indent=0))
