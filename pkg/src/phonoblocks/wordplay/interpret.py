"""The invented-spelling interpreter.

Children's block arrangements mix three kinds of knowledge, so each
input block expands along three channels: the sounds its letter usually
makes (pair-table frequencies), the letter's spoken name (E as [IY]),
and, when the letters literally spell a dictionary word, the word
itself.  A best-first search walks a pronunciation trie consuming one
block at a time: sound candidates may substitute at articulatory
feature distance, letter-name sequences must match exactly, skipping a
block or inserting a word phoneme costs one unit, and input that ends
before the word does pays a per-phoneme prefix penalty.  A mild word
frequency prior keeps everyday words ahead of obscure dictionary
entries at equal edit cost.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np

from phonoblocks import inventory
from phonoblocks.lexicon.lexicon import Lexicon
from phonoblocks.wordplay.blocks import Block
from phonoblocks.wordplay.render import LETTER_NAMES


@dataclass(frozen=True)
class Interpretation:
    word: str
    phonemes: tuple[str, ...]
    score: float  # higher is better; negative total cost
    channel: str  # phonetic | letterName | logographic


@dataclass
class InterpreterConfig:
    max_sound_candidates: int = 3
    sound_weight: float = 0.25      # x -ln P(phoneme | letter)
    letter_name_cost: float = 0.3
    sub_scale: float = 2.5          # x feature distance
    ins_del_cost: float = 1.3
    prefix_penalty: float = 0.5     # per trailing phoneme the input is missing
    prefix_penalty_cap: float = 0.8  # flooding control for long continuations
    freq_weight: float = 0.15       # x (max log count - log count)
    logographic_bonus: float = 0.5
    exact_match_bonus: float = 2.0  # rewards cost-free full consumption
    max_pops: int = 25_000

    @classmethod
    def from_dict(cls, d: dict) -> "InterpreterConfig":
        cfg = cls()
        for k, v in d.items():
            if not hasattr(cfg, k):
                raise ValueError(f"unknown interpreter option {k!r}")
            setattr(cfg, k, v)
        return cfg


_FEATURE_DIST: dict[tuple[str, str], float] | None = None


def _distance_table() -> dict[tuple[str, str], float]:
    global _FEATURE_DIST
    if _FEATURE_DIST is None:
        feats = np.array([inventory.get(s).scaled_features()
                          for s in inventory.SYMBOLS])
        diff = feats[:, None, :] - feats[None, :, :]
        mat = np.sqrt((diff ** 2).sum(axis=2))
        _FEATURE_DIST = {
            (a, b): float(mat[i, j])
            for i, a in enumerate(inventory.SYMBOLS)
            for j, b in enumerate(inventory.SYMBOLS)
        }
    return _FEATURE_DIST


def feature_distance(a: str, b: str) -> float:
    return _distance_table()[a, b]


class _TrieNode:
    __slots__ = ("children", "words", "uid")

    def __init__(self, uid: int):
        self.children: list[tuple[str, "_TrieNode"]] = []
        self.words: list[str] = []
        self.uid = uid


class _PronTrie:
    """Primary-variant pronunciations, children sorted for determinism."""

    def __init__(self, lexicon: Lexicon):
        self.root = _TrieNode(0)
        build: dict[int, dict[str, int]] = {0: {}}
        nodes = [self.root]
        for entry in lexicon.entries:
            if not entry.is_primary:
                continue
            cur = 0
            for p in entry.phonemes:
                nxt = build[cur].get(p)
                if nxt is None:
                    nxt = len(nodes)
                    nodes.append(_TrieNode(nxt))
                    build[cur][p] = nxt
                    build[nxt] = {}
                cur = nxt
            nodes[cur].words.append(entry.word)
        for idx, kids in build.items():
            nodes[idx].children = sorted(
                (sym, nodes[i]) for sym, i in kids.items())
        for node in nodes:
            node.words.sort()
        self.n_nodes = len(nodes)


def _trie_for(lexicon: Lexicon) -> _PronTrie:
    trie = getattr(lexicon, "_pron_trie", None)
    if trie is None:
        trie = _PronTrie(lexicon)
        lexicon._pron_trie = trie
    return trie


def _sound_candidates(block: Block, lexicon, cfg):
    """Single-phoneme options: (phoneme, cost) by letter-sound frequency."""
    if block.kind == "phoneme":
        return [(block.symbol, 0.0)]
    scores = lexicon.phoneme_scores_for_chunk(block.symbol)
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return [(p, cfg.sound_weight * -math.log(v))
            for p, v in ranked[:cfg.max_sound_candidates]]


def _letter_name(block: Block) -> tuple[str, ...] | None:
    if block.kind != "letter":
        return None
    return LETTER_NAMES[block.symbol]


def interpret(blocks, lexicon: Lexicon, k: int = 5,
              config: InterpreterConfig | None = None) -> list[Interpretation]:
    """Top-k lexicon interpretations of a block arrangement."""
    if k < 1:
        raise ValueError("k must be >= 1")
    blocks = list(blocks)
    if not blocks:
        return []
    cfg = config or InterpreterConfig()
    trie = _trie_for(lexicon)
    n = len(blocks)
    sound = [_sound_candidates(b, lexicon, cfg) for b in blocks]
    names = [_letter_name(b) for b in blocks]
    dist = _distance_table()
    # cheapest way for block i to land on each phoneme symbol
    consume_cost: list[dict[str, float]] = []
    for cands in sound:
        table: dict[str, float] = {}
        for sym in inventory.SYMBOLS:
            best_d = math.inf
            for p, ccost in cands:
                d = ccost if sym == p else ccost + cfg.sub_scale * dist[sym, p]
                if d < best_d:
                    best_d = d
            table[sym] = best_d
        consume_cost.append(table)

    # hits: word -> (final cost incl. frequency prior, channel)
    hits: dict[str, tuple[float, str]] = {}
    max_lf = lexicon.max_log_frequency

    dirty = [True]
    cached_kth = [math.inf]

    def record(word, edit_cost, used_name, channel=None):
        if channel is None:
            channel = "letterName" if used_name else "phonetic"
        final = edit_cost + cfg.freq_weight * (max_lf - lexicon.log_frequency(word))
        prev = hits.get(word)
        if prev is None or final < prev[0]:
            hits[word] = (final, channel)
            dirty[0] = True

    def kth_cost():
        if dirty[0]:
            if len(hits) < k:
                cached_kth[0] = math.inf
            else:
                cached_kth[0] = sorted(c for c, _ in hits.values())[k - 1]
            dirty[0] = False
        return cached_kth[0]

    # logographic channel first so its bound prunes the search
    if all(b.kind == "letter" for b in blocks):
        spelled = "".join(b.symbol for b in blocks)
        if lexicon.primary(spelled) is not None:
            hits[spelled] = (-cfg.logographic_bonus, "logographic")

    # a record's final is never below the recording state's cost, so the
    # search may stop once the popped cost exceeds the kth best final
    prefix_cap = min(cfg.prefix_penalty_cap, cfg.prefix_penalty * n)

    counter = itertools.count()
    heap = [(0.0, next(counter), trie.root, 0, False, 0.0)]
    best: dict[tuple[int, int, bool], float] = {}
    pops = 0
    while heap and pops < cfg.max_pops:
        cost, _, node, i, used, paid = heapq.heappop(heap)
        key = (node.uid, i, used)
        if best.get(key, math.inf) < cost:
            continue
        pops += 1
        bound = kth_cost()
        if cost > bound:
            break  # no remaining state can reach the final top-k

        def push(c, nd, j, u, pd=0.0):
            if c > bound:
                return
            kk = (nd.uid, j, u)
            if best.get(kk, math.inf) > c:
                best[kk] = c
                heapq.heappush(heap, (c, next(counter), nd, j, u, pd))

        if i == n:
            for word in node.words:
                if cost == 0.0:
                    # input consumed with no edits and no candidate slack
                    record(word, -cfg.exact_match_bonus, used)
                else:
                    record(word, cost, used)
            # the word continues past the input: prefix match, fee capped
            step = min(cfg.prefix_penalty, max(prefix_cap - paid, 0.0))
            for _, child in node.children:
                push(cost + step, child, i, used, paid + step)
            continue

        if node.words:
            # word complete but blocks remain: skip the tail
            tail = cost + cfg.ins_del_cost * (n - i)
            for word in node.words:
                record(word, tail, used)

        # skip this block
        push(cost + cfg.ins_del_cost, node, i + 1, used)

        block_cost = consume_cost[i]
        for sym, child in node.children:
            # insertion: the word has a phoneme the input never wrote
            push(cost + cfg.ins_del_cost, child, i, used)
            # match or substitute one of the block's sound candidates
            dbest = block_cost[sym]
            if dbest < math.inf:
                push(cost + dbest, child, i + 1, used)

        # letter-name channel: exact walk of the name's phonemes
        name = names[i]
        if name is not None:
            cur = node
            ok = True
            for p in name:
                nxt = None
                for sym, child in cur.children:
                    if sym == p:
                        nxt = child
                        break
                if nxt is None:
                    ok = False
                    break
                cur = nxt
            if ok:
                push(cost + cfg.letter_name_cost, cur, i + 1, True)

    ranked = []
    for word, (final, channel) in hits.items():
        primary = lexicon.primary(word)
        if primary is None:
            continue
        ranked.append(Interpretation(word, primary.phonemes, -final, channel))
    ranked.sort(key=lambda r: (-r.score, r.word))
    return ranked[:k]
