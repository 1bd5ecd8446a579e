"""Context-dependent rendering: phonemes to spelling and back.

render_phonemes realizes the inverse-block behavior: a phoneme sequence
that matches a dictionary pronunciation is spelled with that word's
aligned chunks; anything else falls back to the most frequent chunk for
each phoneme at its position.  pronounce_letters is the reverse: a
dictionary lookup backed by a Viterbi grapheme-to-phoneme decode over
the pair table for out-of-lexicon strings.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from phonoblocks import inventory
from phonoblocks.lexicon.lexicon import Lexicon
from phonoblocks.lexicon.pairs import chunk_position

NEG_INF = float("-inf")


def _load_letter_names() -> dict[str, tuple[str, ...]]:
    raw = json.loads(
        resources.files("phonoblocks.data").joinpath("letter_names.json").read_text()
    )
    return {k: tuple(v) for k, v in raw.items()}


LETTER_NAMES = _load_letter_names()


@dataclass(frozen=True)
class Rendering:
    chunks: tuple[str, ...]
    word: str | None            # matched lexicon word, if any
    homophones: tuple[str, ...]  # other words with the same pronunciation


def render_phonemes_detail(phonemes, lexicon: Lexicon) -> Rendering:
    phonemes = tuple(phonemes)
    if not phonemes:
        return Rendering((), None, ())
    for p in phonemes:
        if not inventory.is_phoneme(p):
            raise KeyError(f"not an inventory phoneme: {p!r}")
    hits = lexicon.words_for_pronunciation(phonemes)
    words = [w for _, w in hits]
    for variant, word in hits:
        aligned = lexicon.aligned(word, variant)
        if aligned is not None:
            others = tuple(w for w in words if w != word)
            return Rendering(aligned.chunks, word, others)
    n = len(phonemes)
    chunks = tuple(
        lexicon.best_chunk(p, chunk_position(i, n)) for i, p in enumerate(phonemes)
    )
    return Rendering(chunks, None, ())


def render_phonemes(phonemes, lexicon: Lexicon) -> tuple[str, ...]:
    return render_phonemes_detail(phonemes, lexicon).chunks


class _G2P:
    """Viterbi segmentation of a letter string into pair-table chunks.

    Each chunk is read at face value, ln P(phoneme | chunk), with a
    length prior of LENGTH_PENALTY nats per letter beyond the first so
    that splitting into short chunks stays competitive (otherwise a
    near-deterministic digraph like final ES, which is almost always
    [z], would swallow its neighbors).  Two phonotactic guards keep the
    splits honest: a chunk may not yield a phoneme that essentially
    never occurs at that word position (no word-final [h]), and two
    adjacent chunks may not yield the same phoneme (no geminates, which
    is what keeps CK or LL whole).
    """

    LENGTH_PENALTY = 1.3
    MIN_POSITION_SHARE = 0.01

    def __init__(self, lexicon: Lexicon):
        self.max_chunk = lexicon.model.max_chunk
        # chunk -> (score, phoneme) at face value
        self.best: dict[str, tuple[float, str]] = {}
        for chunk, total in lexicon._chunk_totals.items():
            stats = lexicon._by_chunk[chunk]
            top = min(stats, key=lambda s: (-s.count, s.phoneme))
            score = math.log(top.count / total) \
                - self.LENGTH_PENALTY * (len(chunk) - 1)
            self.best[chunk] = (score, top.phoneme)
        # fraction of a phoneme's occurrences at each word position
        share: dict[str, dict[str, float]] = {}
        for stats in lexicon._by_chunk.values():
            for s in stats:
                row = share.setdefault(s.phoneme, {"initial": 0, "medial": 0,
                                                   "final": 0, "total": 0})
                for pos in ("initial", "medial", "final"):
                    row[pos] += s.positional(pos)
                row["total"] += s.count
        self.position_ok = {
            (p, pos): row["total"] > 0
            and row[pos] / row["total"] >= self.MIN_POSITION_SHARE
            for p, row in share.items()
            for pos in ("initial", "medial", "final")
        }

    def _chunk_at(self, letters, start, end):
        hit = self.best.get(letters[start:end])
        if hit is None:
            return None
        if start == 0:
            pos = "initial"
        elif end == len(letters):
            pos = "final"
        else:
            pos = "medial"
        if not self.position_ok.get((hit[1], pos), False):
            return None
        return hit

    def decode(self, letters: str) -> tuple[str, ...]:
        n = len(letters)
        if n == 0:
            return ()
        mc = self.max_chunk
        # forward Viterbi over (letters consumed, previous phoneme)
        start_key = (0, "")
        scores: dict[tuple[int, str], float] = {start_key: 0.0}
        back: dict[tuple[int, str], tuple[tuple[int, str], str, int]] = {}
        frontier = [start_key]
        for pos in range(n):
            nxt_frontier = []
            for key in [kk for kk in frontier if kk[0] == pos]:
                base = scores[key]
                for k in range(1, min(mc, n - pos) + 1):
                    hit = self._chunk_at(letters, pos, pos + k)
                    if hit is None:
                        continue
                    score, phoneme = hit
                    if phoneme == key[1]:
                        continue  # geminate guard
                    nk = (pos + k, phoneme)
                    cand = base + score
                    if nk not in scores or cand > scores[nk]:
                        scores[nk] = cand
                        back[nk] = (key, phoneme, k)
                        nxt_frontier.append(nk)
            frontier = [kk for kk in scores if kk[0] > pos]
        finals = [kk for kk in scores if kk[0] == n]
        if not finals:
            # letters the table cannot segment: use the first sound of
            # each letter's name as a last resort
            return tuple(LETTER_NAMES[ch][0] for ch in letters)
        end_key = max(finals, key=lambda kk: (scores[kk], kk[1]))
        phonemes: list[str] = []
        key = end_key
        while key != start_key:
            key, phoneme, _ = back[key]
            phonemes.append(phoneme)
        return tuple(reversed(phonemes))


def _g2p_for(lexicon: Lexicon) -> _G2P:
    g2p = getattr(lexicon, "_g2p_decoder", None)
    if g2p is None:
        g2p = _G2P(lexicon)
        lexicon._g2p_decoder = g2p
    return g2p


def pronounce_letters(letters: str, lexicon: Lexicon) -> tuple[str, ...]:
    """Phoneme sequence for a letter string (A-Z only)."""
    if letters == "":
        return ()
    letters = letters.upper()
    if not all("A" <= ch <= "Z" for ch in letters):
        raise ValueError(f"letters must be A-Z: {letters!r}")
    primary = lexicon.primary(letters)
    if primary is not None:
        return primary.phonemes
    return _g2p_for(lexicon).decode(letters)
