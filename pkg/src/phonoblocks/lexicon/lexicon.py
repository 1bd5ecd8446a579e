"""The Lexicon: entries, trained alignment, pair tables, and creatures,
behind the lookup API the block engine and scaffolder consume."""

from __future__ import annotations

import gzip
import json
import math
from importlib import resources
from pathlib import Path

from phonoblocks.lexicon.alignment import (
    AlignedEntry,
    AlignmentModel,
    align_batch,
    is_alignable,
    is_trainable,
    train_alignment,
)
from phonoblocks.lexicon.creatures import (
    CreatureSpec,
    creature_registry,
    registry_from_json,
    registry_to_json,
)
from phonoblocks.lexicon.pairs import (
    PairStat,
    pair_table,
    save_table,
    table_from_json,
    table_to_json,
    top_pairs,
)
from phonoblocks.lexicon.parser import PronEntry, load_bundled_dictionary

DEFAULT_TOP_N = 80


def load_word_frequencies() -> dict[str, int]:
    """Corpus word counts bundled with the package (uppercased)."""
    blob = resources.files("phonoblocks.data").joinpath("wordfreq.tsv.gz").read_bytes()
    freq = {}
    for line in gzip.decompress(blob).decode().splitlines():
        word, _, count = line.partition("\t")
        if count:
            freq[word] = int(count)
    return freq


class Lexicon:
    """Read-only once built; safe to share across sessions and threads."""

    def __init__(self, entries: list[PronEntry], model: AlignmentModel,
                 table: list[PairStat], creatures: list[CreatureSpec],
                 top_n: int = DEFAULT_TOP_N):
        self.entries = entries
        self.model = model
        self.table = table
        self.top_n = top_n
        self.top = top_pairs(table, top_n) if table else []
        self.creatures = creatures
        self._creature_by_phoneme = {c.phoneme: c for c in creatures}
        self._by_word: dict[str, list[PronEntry]] = {}
        for e in entries:
            self._by_word.setdefault(e.word, []).append(e)
        for variants in self._by_word.values():
            variants.sort(key=lambda e: e.variant)
        self._by_pron: dict[tuple[str, ...], list[tuple[int, str]]] = {}
        for e in entries:
            self._by_pron.setdefault(e.phonemes, []).append((e.variant, e.word))
        for hits in self._by_pron.values():
            hits.sort()
        self._aligned_cache: dict[tuple[str, int], AlignedEntry | None] = {}
        self._pair_count: dict[tuple[str, str], PairStat] = {
            (s.phoneme, s.chunk): s for s in table
        }
        self._chunk_totals: dict[str, int] = {}
        self._by_chunk: dict[str, list[PairStat]] = {}
        self._by_phoneme: dict[str, list[PairStat]] = {}
        for s in table:
            self._chunk_totals[s.chunk] = self._chunk_totals.get(s.chunk, 0) + s.count
            self._by_chunk.setdefault(s.chunk, []).append(s)
            self._by_phoneme.setdefault(s.phoneme, []).append(s)
        self.frequencies = load_word_frequencies()
        self.max_log_frequency = math.log1p(max(self.frequencies.values(), default=0))

    # -- entry lookup ------------------------------------------------------

    def __contains__(self, word: str) -> bool:
        return word.upper() in self._by_word

    def __len__(self) -> int:
        return len(self._by_word)

    def variants(self, word: str) -> list[PronEntry]:
        return self._by_word.get(word.upper(), [])

    def primary(self, word: str) -> PronEntry | None:
        hits = self.variants(word)
        return hits[0] if hits and hits[0].variant == 1 else (hits[0] if hits else None)

    def words_for_pronunciation(self, phonemes: tuple[str, ...]) -> list[tuple[int, str]]:
        """(variant, word) pairs sorted so the preferred homophone is first."""
        return self._by_pron.get(tuple(phonemes), [])

    def aligned(self, word: str, variant: int = 1) -> AlignedEntry | None:
        key = (word.upper(), variant)
        if key not in self._aligned_cache:
            entry = next((e for e in self.variants(word) if e.variant == variant), None)
            if entry is None or not is_trainable(entry) or \
                    not is_alignable(entry, self.model.max_chunk):
                self._aligned_cache[key] = None
            else:
                self._aligned_cache[key] = align_batch([entry], self.model)[0]
        return self._aligned_cache[key]

    # -- pair statistics ---------------------------------------------------

    def pair_count(self, phoneme: str, chunk: str) -> int:
        stat = self._pair_count.get((phoneme, chunk))
        return stat.count if stat else 0

    def best_chunk(self, phoneme: str, position: str) -> str:
        """Most frequent chunk for a phoneme at a word position.

        Ranked by positional count, then total count, then chunk string.
        """
        candidates = self._by_phoneme.get(phoneme)
        if not candidates:
            raise KeyError(f"no chunks recorded for {phoneme}")
        return min(candidates,
                   key=lambda s: (-s.positional(position), -s.count, s.chunk)).chunk

    def chunks_for_phoneme(self, phoneme: str) -> list[PairStat]:
        return self._by_phoneme.get(phoneme, [])

    def phoneme_scores_for_chunk(self, chunk: str) -> dict[str, float]:
        """P(phoneme | chunk) over the pair table."""
        total = self._chunk_totals.get(chunk)
        if not total:
            return {}
        return {s.phoneme: s.count / total for s in self._by_chunk[chunk]}

    def creature_for(self, phoneme: str) -> CreatureSpec:
        return self._creature_by_phoneme[phoneme]

    def word_frequency(self, word: str) -> int:
        return self.frequencies.get(word.upper(), 0)

    def log_frequency(self, word: str) -> float:
        return math.log1p(self.word_frequency(word))

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, entries: list[PronEntry] | None = None,
              max_chunk: int = 4, max_iterations: int = 25,
              tolerance: float = 1.0, top_n: int = DEFAULT_TOP_N,
              excluded: list | None = None) -> "Lexicon":
        """Train everything from dictionary entries (bundled CMU by default)."""
        if entries is None:
            entries = load_bundled_dictionary()
        model = train_alignment(entries, max_chunk=max_chunk,
                                max_iterations=max_iterations,
                                tolerance=tolerance, excluded=excluded)
        primaries = [e for e in entries
                     if e.is_primary and is_trainable(e) and is_alignable(e, max_chunk)]
        aligned = [a for a in align_batch(primaries, model) if a is not None]
        table = pair_table(aligned)
        creatures = creature_registry(table, top_n)
        return cls(entries, model, table, creatures, top_n)

    def save_artifacts(self, out_dir: str | Path) -> None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        self.model.save(out / "alignment_model.json")
        save_table(self.table, out / "pair_table.tsv", out / "pair_table.json")
        (out / "creatures.json").write_text(
            json.dumps(registry_to_json(self.creatures), indent=1))
        (out / "manifest.json").write_text(json.dumps({
            "format": "phonoblocks-lexicon",
            "version": 1,
            "top_n": self.top_n,
            "entries": len(self.entries),
            "words": len(self),
        }, indent=1))

    @classmethod
    def load_artifacts(cls, out_dir: str | Path,
                       entries: list[PronEntry] | None = None) -> "Lexicon":
        out = Path(out_dir)
        manifest = json.loads((out / "manifest.json").read_text())
        if manifest.get("format") != "phonoblocks-lexicon":
            raise ValueError(f"{out}: not a lexicon artifact directory")
        if entries is None:
            entries = load_bundled_dictionary()
        model = AlignmentModel.load(out / "alignment_model.json")
        table = table_from_json(json.loads((out / "pair_table.json").read_text()))
        creatures = registry_from_json(
            json.loads((out / "creatures.json").read_text()))
        return cls(entries, model, table, creatures, manifest.get("top_n", DEFAULT_TOP_N))
