"""Pure-Python alignment kernels.

Reference implementation of the segmentation-lattice kernels; the
compiled Cython module (_kernels) mirrors these loops operation for
operation so both produce identical floats.  Selected at import time by
phonoblocks.kernels when the compiled module is unavailable or when
PHONOBLOCKS_PURE_PYTHON is set.

Corpus encoding (shared with the Cython kernel):
  word_n[i], word_l[i]   phoneme / letter counts per word
  phon_flat / phon_off   concatenated phoneme ids
  sub_flat / sub_off     per word, (letter_end-1)*max_chunk + (k-1) holds
                         the chunk id of word[letter_end-k : letter_end],
                         or -1 when the substring would start before 0
  pair_lookup[p][c]      dense (phoneme, chunk) -> pair id, -1 if absent
"""

from __future__ import annotations

import math

NEG_INF = float("-inf")


def _logaddexp(a: float, b: float) -> float:
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    if a >= b:
        return a + math.log1p(math.exp(b - a))
    return b + math.log1p(math.exp(a - b))


def enumerate_pairs(word_n, word_l, phon_flat, phon_off, sub_flat, sub_off,
                    max_chunk, pair_mask):
    """Mark every (phoneme, chunk) pair that occurs in some word's lattice.

    Reachability is purely combinatorial: a lattice cell is live when the
    letters before and after it can be split among the remaining phonemes
    with 1..max_chunk letters each.
    """
    n_words = len(word_n)
    mc = max_chunk
    for i in range(n_words):
        n = word_n[i]
        L = word_l[i]
        if n == 0 or L < n or L > n * mc:
            continue
        po = phon_off[i]
        so = sub_off[i]
        for j in range(1, n + 1):
            p = phon_flat[po + j - 1]
            lo = max(j, L - (n - j) * mc)
            hi = min(j * mc, L - (n - j))
            for l in range(lo, hi + 1):
                for k in range(1, min(mc, l) + 1):
                    lp = l - k
                    jp = j - 1
                    if lp < jp or lp > jp * mc:
                        continue
                    cid = sub_flat[so + (l - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pair_mask[p][cid] = 1


def em_iteration(word_n, word_l, phon_flat, phon_off, sub_flat, sub_off,
                 pair_lookup, log_probs, counts, max_chunk):
    """One EM expectation step over the whole corpus.

    Adds expected pair counts into `counts` and returns the corpus
    log-likelihood under the current emission probabilities.  Words whose
    lattice has no path are skipped (they contribute nothing).
    """
    n_words = len(word_n)
    mc = max_chunk
    total = 0.0
    for i in range(n_words):
        n = word_n[i]
        L = word_l[i]
        if n == 0 or L < n or L > n * mc:
            continue
        po = phon_off[i]
        so = sub_off[i]

        # forward, log space
        la = [[NEG_INF] * (L + 1) for _ in range(n + 1)]
        la[0][0] = 0.0
        for j in range(1, n + 1):
            p = phon_flat[po + j - 1]
            row_prev = la[j - 1]
            row = la[j]
            for l in range(j, min(L, j * mc) + 1):
                acc = NEG_INF
                for k in range(1, min(mc, l) + 1):
                    prev = row_prev[l - k]
                    if prev == NEG_INF:
                        continue
                    cid = sub_flat[so + (l - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pid = pair_lookup[p][cid]
                    if pid < 0:
                        continue
                    acc = _logaddexp(acc, prev + log_probs[pid])
                row[l] = acc
        lz = la[n][L]
        if lz == NEG_INF:
            continue
        total += lz

        # backward, log space
        lb = [[NEG_INF] * (L + 1) for _ in range(n + 1)]
        lb[n][L] = 0.0
        for j in range(n - 1, -1, -1):
            p = phon_flat[po + j]
            row_next = lb[j + 1]
            row = lb[j]
            for l in range(j, min(L, j * mc) + 1):
                acc = NEG_INF
                for k in range(1, mc + 1):
                    if l + k > L:
                        break
                    nxt = row_next[l + k]
                    if nxt == NEG_INF:
                        continue
                    cid = sub_flat[so + (l + k - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pid = pair_lookup[p][cid]
                    if pid < 0:
                        continue
                    acc = _logaddexp(acc, nxt + log_probs[pid])
                row[l] = acc

        # posterior accumulation
        for j in range(1, n + 1):
            p = phon_flat[po + j - 1]
            row_prev = la[j - 1]
            row_b = lb[j]
            for l in range(j, min(L, j * mc) + 1):
                post_b = row_b[l]
                if post_b == NEG_INF:
                    continue
                for k in range(1, min(mc, l) + 1):
                    prev = row_prev[l - k]
                    if prev == NEG_INF:
                        continue
                    cid = sub_flat[so + (l - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pid = pair_lookup[p][cid]
                    if pid < 0:
                        continue
                    counts[pid] += math.exp(prev + log_probs[pid] + post_b - lz)
    return total


def viterbi_batch(word_n, word_l, phon_flat, phon_off, sub_flat, sub_off,
                  pair_lookup, log_probs, max_chunk, out_lens, out_scores):
    """Best-scoring segmentation per word.

    Chunk lengths are written into out_lens (indexed like phon_flat) and
    the path log-probability into out_scores; unalignable words get
    score -inf.  Ties prefer the shortest chunk at the earliest position,
    realized by a backward max table plus a greedy forward walk that takes
    the smallest k whose value exactly attains the table maximum.
    """
    n_words = len(word_n)
    mc = max_chunk
    for i in range(n_words):
        n = word_n[i]
        L = word_l[i]
        po = phon_off[i]
        so = sub_off[i]
        if n == 0 or L < n or L > n * mc:
            out_scores[i] = NEG_INF
            continue

        bt = [[NEG_INF] * (L + 1) for _ in range(n + 1)]
        bt[n][L] = 0.0
        for j in range(n - 1, -1, -1):
            p = phon_flat[po + j]
            row_next = bt[j + 1]
            row = bt[j]
            for l in range(j, min(L, j * mc) + 1):
                best = NEG_INF
                for k in range(1, mc + 1):
                    if l + k > L:
                        break
                    nxt = row_next[l + k]
                    if nxt == NEG_INF:
                        continue
                    cid = sub_flat[so + (l + k - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pid = pair_lookup[p][cid]
                    if pid < 0:
                        continue
                    v = log_probs[pid] + nxt
                    if v > best:
                        best = v
                row[l] = best

        score = bt[0][0]
        out_scores[i] = score
        if score == NEG_INF:
            continue
        l = 0
        for j in range(n):
            p = phon_flat[po + j]
            target = bt[j][l]
            for k in range(1, mc + 1):
                if l + k > L:
                    break
                nxt = bt[j + 1][l + k]
                if nxt == NEG_INF:
                    continue
                cid = sub_flat[so + (l + k - 1) * mc + k - 1]
                if cid < 0:
                    continue
                pid = pair_lookup[p][cid]
                if pid < 0:
                    continue
                if log_probs[pid] + nxt == target:
                    out_lens[po + j] = k
                    l += k
                    break
