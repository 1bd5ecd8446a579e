"""Compare the compiled alignment kernels against the pure-Python fallback.

Runs one EM iteration and one Viterbi pass over a slice of the bundled
dictionary with both implementations, reports wall times and the
largest numeric disagreement (which should be zero: the fallback
mirrors the compiled loops operation for operation).

    python benchmarks/bench_kernels.py [--words 20000]
"""

import argparse
import time

import numpy as np

from phonoblocks import _pykernels, kernels
from phonoblocks.lexicon import load_bundled_dictionary, train_alignment
from phonoblocks.lexicon.alignment import _Corpus, _model_arrays, is_alignable, is_trainable


def encode(n_words):
    entries = [e for e in load_bundled_dictionary()
               if e.is_primary and is_trainable(e) and is_alignable(e, 4)]
    entries = entries[:n_words]
    model = train_alignment(entries, max_iterations=2, tolerance=0.0)
    chunk_ids = {}
    for p in sorted(model.probs):
        for c in sorted(model.probs[p]):
            chunk_ids.setdefault(c, len(chunk_ids))
    corpus = _Corpus(entries, 4, chunk_ids, grow_vocab=False)
    pair_lookup, log_probs = _model_arrays(model, chunk_ids)
    return corpus, pair_lookup, log_probs


def run_em(impl, corpus, pair_lookup, log_probs):
    counts = np.zeros(len(log_probs))
    t0 = time.perf_counter()
    ll = impl.em_iteration(corpus.word_n, corpus.word_l, corpus.phon_flat,
                           corpus.phon_off, corpus.sub_flat, corpus.sub_off,
                           pair_lookup, log_probs, counts, 4)
    return time.perf_counter() - t0, ll, counts


def run_viterbi(impl, corpus, pair_lookup, log_probs):
    lens = np.zeros(int(corpus.phon_off[-1]), dtype=np.int8)
    scores = np.zeros(len(corpus.entries))
    t0 = time.perf_counter()
    impl.viterbi_batch(corpus.word_n, corpus.word_l, corpus.phon_flat,
                       corpus.phon_off, corpus.sub_flat, corpus.sub_off,
                       pair_lookup, log_probs, 4, lens, scores)
    return time.perf_counter() - t0, lens, scores


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--words", type=int, default=20_000)
    args = parser.parse_args()

    if not kernels.COMPILED:
        print("compiled kernel unavailable; nothing to compare against")
        return

    print(f"encoding {args.words} dictionary words...")
    corpus, pair_lookup, log_probs = encode(args.words)

    rows = []
    c_t, c_ll, c_counts = run_em(kernels._impl, corpus, pair_lookup, log_probs)
    p_t, p_ll, p_counts = run_em(_pykernels, corpus, pair_lookup, log_probs)
    rows.append(("em_iteration", c_t, p_t,
                 max(abs(c_ll - p_ll), float(np.max(np.abs(c_counts - p_counts))))))

    c_t, c_lens, c_scores = run_viterbi(kernels._impl, corpus, pair_lookup,
                                        log_probs)
    p_t, p_lens, p_scores = run_viterbi(_pykernels, corpus, pair_lookup,
                                        log_probs)
    mismatch = float(np.max(np.abs(c_scores - p_scores)))
    if not np.array_equal(c_lens, p_lens):
        mismatch = max(mismatch, 1.0)
    rows.append(("viterbi_batch", c_t, p_t, mismatch))

    print(f"\n{'kernel':15s} {'cython':>10s} {'python':>10s} "
          f"{'speedup':>9s} {'max |diff|':>12s}")
    for name, ct, pt, diff in rows:
        print(f"{name:15s} {ct:9.3f}s {pt:9.3f}s {pt / ct:8.1f}x {diff:12.3e}")


if __name__ == "__main__":
    main()
