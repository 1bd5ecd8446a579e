"""Phoneme-to-grapheme alignment via EM over a monotone segmentation model.

Each phoneme of a word consumes 1..max_chunk letters; the letters are
consumed fully and in order.  Emission probabilities P(chunk | phoneme)
are learned by expectation maximization with forward-backward over the
segmentation lattice; decoding is a max-probability (Viterbi) pass with
shortest-earlier-chunk tie-breaking.

Training is deterministic: uniform initialization over each phoneme's
reachable chunk support, fixed word order, fixed reduction order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from phonoblocks import inventory, kernels
from phonoblocks.lexicon.parser import PronEntry

MODEL_FORMAT = "phonoblocks-alignment"
MODEL_VERSION = 1

DEFAULT_MAX_CHUNK = 4
DEFAULT_MAX_ITERATIONS = 25
DEFAULT_TOLERANCE = 1.0  # absolute corpus log-likelihood improvement, nats

_TRAINABLE_WORD = frozenset("ABCDEFGHIJKLMNOPQRSTUVWXYZ")


class AlignmentError(ValueError):
    """Raised when an entry cannot be segmented under the chunk constraints."""


@dataclass(frozen=True)
class AlignedEntry:
    word: str
    phonemes: tuple[str, ...]
    chunks: tuple[str, ...]
    score: float

    def __post_init__(self):
        if "".join(self.chunks) != self.word:
            raise ValueError(
                f"chunks {self.chunks!r} do not concatenate to {self.word!r}"
            )
        if len(self.chunks) != len(self.phonemes):
            raise ValueError("chunk and phoneme sequences must have equal length")


class AlignmentModel:
    """Learned emission table P(chunk | phoneme) plus the chunk-size cap."""

    def __init__(self, probs: dict[str, dict[str, float]], max_chunk: int,
                 iterations: int = 0, final_loglik: float = float("nan")):
        self.probs = probs
        self.max_chunk = max_chunk
        self.iterations = iterations
        self.final_loglik = final_loglik
        self._log_probs = {
            p: {c: math.log(v) for c, v in row.items()} for p, row in probs.items()
        }
        self._decoder: tuple | None = None  # (chunk_ids, pair_lookup, log_prob_vec)

    def log_prob(self, phoneme: str, chunk: str) -> float:
        return self._log_probs.get(phoneme, {}).get(chunk, float("-inf"))

    def support(self, phoneme: str) -> dict[str, float]:
        return self.probs.get(phoneme, {})

    def validate(self, tol: float = 1e-9) -> None:
        for p, row in self.probs.items():
            if not row:
                continue
            total = math.fsum(row.values())
            if abs(total - 1.0) > tol:
                raise ValueError(f"{p}: probabilities sum to {total}, not 1")
            if any(v <= 0 for v in row.values()):
                raise ValueError(f"{p}: nonpositive probability on support")

    def to_json(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "max_chunk": self.max_chunk,
            "iterations": self.iterations,
            "final_loglik": self.final_loglik,
            "probs": {
                p: {c: row[c] for c in sorted(row)}
                for p, row in sorted(self.probs.items())
            },
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1, sort_keys=False))

    @classmethod
    def from_json(cls, doc: dict) -> "AlignmentModel":
        if doc.get("format") != MODEL_FORMAT:
            raise ValueError(f"not an alignment model document: {doc.get('format')!r}")
        if doc.get("version") != MODEL_VERSION:
            raise ValueError(f"unsupported model version {doc.get('version')!r}")
        return cls(doc["probs"], doc["max_chunk"], doc.get("iterations", 0),
                   doc.get("final_loglik", float("nan")))

    @classmethod
    def load(cls, path: str | Path) -> "AlignmentModel":
        return cls.from_json(json.loads(Path(path).read_text()))


def is_trainable(entry: PronEntry) -> bool:
    """Entries with digits, periods, or other non A-Z characters are kept in
    the lexicon but excluded from alignment training."""
    return bool(entry.word) and set(entry.word) <= _TRAINABLE_WORD


def is_alignable(entry: PronEntry, max_chunk: int) -> bool:
    n, length = len(entry.phonemes), len(entry.word)
    return n <= length <= n * max_chunk


class _Corpus:
    """Flat array encoding of entries for the kernels."""

    def __init__(self, entries: list[PronEntry], max_chunk: int,
                 chunk_ids: dict[str, int] | None = None, grow_vocab: bool = True):
        self.entries = entries
        self.max_chunk = max_chunk
        self.chunk_ids = {} if chunk_ids is None else chunk_ids
        n_words = len(entries)
        word_n = np.zeros(n_words, dtype=np.int32)
        word_l = np.zeros(n_words, dtype=np.int32)
        phon_off = np.zeros(n_words + 1, dtype=np.int64)
        sub_off = np.zeros(n_words + 1, dtype=np.int64)
        for i, e in enumerate(entries):
            word_n[i] = len(e.phonemes)
            word_l[i] = len(e.word)
            phon_off[i + 1] = phon_off[i] + len(e.phonemes)
            sub_off[i + 1] = sub_off[i] + len(e.word) * max_chunk
        phon_flat = np.zeros(int(phon_off[-1]), dtype=np.int32)
        sub_flat = np.full(int(sub_off[-1]), -1, dtype=np.int32)
        cid = self.chunk_ids
        for i, e in enumerate(entries):
            po = int(phon_off[i])
            for j, p in enumerate(e.phonemes):
                phon_flat[po + j] = inventory.SYMBOL_INDEX[p]
            so = int(sub_off[i])
            w = e.word
            for l in range(1, len(w) + 1):
                for k in range(1, min(max_chunk, l) + 1):
                    sub = w[l - k:l]
                    c = cid.get(sub, -1)
                    if c < 0 and grow_vocab:
                        c = len(cid)
                        cid[sub] = c
                    sub_flat[so + (l - 1) * max_chunk + k - 1] = c
        self.word_n, self.word_l = word_n, word_l
        self.phon_flat, self.phon_off = phon_flat, phon_off
        self.sub_flat, self.sub_off = sub_flat, sub_off


def _model_arrays(model: AlignmentModel, chunk_ids: dict[str, int]):
    """Dense pair lookup and log-prob vector for kernel calls."""
    n_ph = len(inventory.SYMBOLS)
    n_ch = len(chunk_ids)
    pair_lookup = np.full((n_ph, n_ch), -1, dtype=np.int32)
    log_probs = []
    pid = 0
    for p in inventory.SYMBOLS:
        row = model.support(p)
        pi = inventory.SYMBOL_INDEX[p]
        for chunk in sorted(row):
            c = chunk_ids.get(chunk)
            if c is None:
                continue
            pair_lookup[pi, c] = pid
            log_probs.append(model.log_prob(p, chunk))
            pid += 1
    return pair_lookup, np.asarray(log_probs, dtype=np.float64)


def train_alignment(entries: list[PronEntry], max_chunk: int = DEFAULT_MAX_CHUNK,
                    max_iterations: int = DEFAULT_MAX_ITERATIONS,
                    tolerance: float = DEFAULT_TOLERANCE,
                    excluded: list[tuple[PronEntry, str]] | None = None,
                    loglik_trace: list[float] | None = None) -> AlignmentModel:
    """Train the emission table by EM.

    Unalignable or non-trainable entries are skipped and reported through
    `excluded` as (entry, reason) pairs.  `loglik_trace` receives the
    corpus log-likelihood of each iteration (computed under the
    pre-update table, so it is non-decreasing).
    """
    if not entries:
        raise ValueError("no entries to train on")
    if max_chunk < 1:
        raise ValueError("max_chunk must be >= 1")
    usable = []
    for e in entries:
        if not is_trainable(e):
            if excluded is not None:
                excluded.append((e, "non-alphabetic word"))
            continue
        if not is_alignable(e, max_chunk):
            if excluded is not None:
                excluded.append((e, "length outside chunk constraints"))
            continue
        usable.append(e)
    if not usable:
        raise ValueError("no trainable entries under the chunk constraints")

    corpus = _Corpus(usable, max_chunk)
    n_ph = len(inventory.SYMBOLS)
    n_ch = len(corpus.chunk_ids)
    pair_mask = np.zeros((n_ph, n_ch), dtype=np.uint8)
    kernels.enumerate_pairs(corpus.word_n, corpus.word_l, corpus.phon_flat,
                            corpus.phon_off, corpus.sub_flat, corpus.sub_off,
                            max_chunk, pair_mask)

    # pair ids ordered by (phoneme index, chunk id): reduceat-friendly
    ph_idx, ch_idx = np.nonzero(pair_mask)
    order = np.lexsort((ch_idx, ph_idx))
    ph_idx, ch_idx = ph_idx[order], ch_idx[order]
    n_pairs = len(ph_idx)
    pair_lookup = np.full((n_ph, n_ch), -1, dtype=np.int32)
    pair_lookup[ph_idx, ch_idx] = np.arange(n_pairs, dtype=np.int32)
    row_sizes = np.bincount(ph_idx, minlength=n_ph)
    row_starts = np.concatenate(([0], np.cumsum(row_sizes)[:-1]))

    # uniform start: 1/|support| within each phoneme row
    probs = np.empty(n_pairs, dtype=np.float64)
    for pi in range(n_ph):
        if row_sizes[pi]:
            probs[row_starts[pi]:row_starts[pi] + row_sizes[pi]] = 1.0 / row_sizes[pi]

    prev_ll = float("-inf")
    iterations = 0
    final_ll = float("nan")
    for _ in range(max_iterations):
        log_probs = np.where(probs > 0, np.log(np.maximum(probs, 1e-320)), -np.inf)
        counts = np.zeros(n_pairs, dtype=np.float64)
        ll = kernels.em_iteration(corpus.word_n, corpus.word_l, corpus.phon_flat,
                                  corpus.phon_off, corpus.sub_flat, corpus.sub_off,
                                  pair_lookup, log_probs, counts, max_chunk)
        iterations += 1
        final_ll = ll
        if loglik_trace is not None:
            loglik_trace.append(ll)
        totals = np.zeros(n_ph, dtype=np.float64)
        np.add.at(totals, ph_idx, counts)
        with np.errstate(invalid="ignore"):
            probs = np.where(totals[ph_idx] > 0, counts / totals[ph_idx], 0.0)
        if ll - prev_ll < tolerance:
            break
        prev_ll = ll

    chunks_by_id = {c: s for s, c in corpus.chunk_ids.items()}
    table: dict[str, dict[str, float]] = {}
    for pid in range(n_pairs):
        if probs[pid] <= 0:
            continue  # numerically extinct pair drops off the support
        sym = inventory.SYMBOLS[ph_idx[pid]]
        table.setdefault(sym, {})[chunks_by_id[ch_idx[pid]]] = float(probs[pid])
    return AlignmentModel(table, max_chunk, iterations, float(final_ll))


def align(entry: PronEntry, model: AlignmentModel) -> AlignedEntry:
    """Viterbi-decode one entry into chunks.

    Raises AlignmentError when the word admits no segmentation with
    positive probability under the model.
    """
    results = align_batch([entry], model)
    if results[0] is None:
        raise AlignmentError(
            f"{entry.word}: no segmentation of {len(entry.word)} letters into "
            f"{len(entry.phonemes)} chunks of 1..{model.max_chunk}"
        )
    return results[0]


def align_batch(entries: list[PronEntry], model: AlignmentModel,
                ) -> list[AlignedEntry | None]:
    """Viterbi-decode many entries at once; None marks unalignable ones."""
    if not entries:
        return []
    if model._decoder is None:
        chunk_ids: dict[str, int] = {}
        for p in sorted(model.probs):
            for chunk in sorted(model.probs[p]):
                if chunk not in chunk_ids:
                    chunk_ids[chunk] = len(chunk_ids)
        model._decoder = (chunk_ids, *_model_arrays(model, chunk_ids))
    chunk_ids, pair_lookup, log_probs = model._decoder
    corpus = _Corpus(entries, model.max_chunk, chunk_ids, grow_vocab=False)
    out_lens = np.zeros(int(corpus.phon_off[-1]), dtype=np.int8)
    out_scores = np.zeros(len(entries), dtype=np.float64)
    kernels.viterbi_batch(corpus.word_n, corpus.word_l, corpus.phon_flat,
                          corpus.phon_off, corpus.sub_flat, corpus.sub_off,
                          pair_lookup, log_probs, model.max_chunk,
                          out_lens, out_scores)
    results: list[AlignedEntry | None] = []
    for i, e in enumerate(entries):
        if out_scores[i] == float("-inf") or not math.isfinite(out_scores[i]):
            results.append(None)
            continue
        po = int(corpus.phon_off[i])
        lens = out_lens[po:po + len(e.phonemes)]
        chunks = []
        pos = 0
        for k in lens:
            chunks.append(e.word[pos:pos + int(k)])
            pos += int(k)
        results.append(AlignedEntry(e.word, e.phonemes, tuple(chunks),
                                    float(out_scores[i])))
    return results
