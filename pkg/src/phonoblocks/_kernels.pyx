# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled alignment kernels.

Same loops as phonoblocks._pykernels, compiled. Both implementations
must stay operation-for-operation identical so that trained models do
not depend on which one was selected.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, log1p

cnp.import_array()

cdef double NEG_INF = float("-inf")


cdef inline double _logaddexp(double a, double b) nogil:
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    if a >= b:
        return a + log1p(exp(b - a))
    return b + log1p(exp(a - b))


def enumerate_pairs(int[::1] word_n, int[::1] word_l,
                    int[::1] phon_flat, long[::1] phon_off,
                    int[::1] sub_flat, long[::1] sub_off,
                    int max_chunk, unsigned char[:, ::1] pair_mask):
    cdef Py_ssize_t i, n_words = word_n.shape[0]
    cdef int n, L, j, l, k, lp, jp, p, cid, mc = max_chunk
    cdef long po, so
    cdef int lo, hi
    for i in range(n_words):
        n = word_n[i]
        L = word_l[i]
        if n == 0 or L < n or L > n * mc:
            continue
        po = phon_off[i]
        so = sub_off[i]
        for j in range(1, n + 1):
            p = phon_flat[po + j - 1]
            lo = j if j > L - (n - j) * mc else L - (n - j) * mc
            hi = j * mc if j * mc < L - (n - j) else L - (n - j)
            for l in range(lo, hi + 1):
                for k in range(1, (mc if mc < l else l) + 1):
                    lp = l - k
                    jp = j - 1
                    if lp < jp or lp > jp * mc:
                        continue
                    cid = sub_flat[so + (l - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pair_mask[p, cid] = 1


def em_iteration(int[::1] word_n, int[::1] word_l,
                 int[::1] phon_flat, long[::1] phon_off,
                 int[::1] sub_flat, long[::1] sub_off,
                 int[:, ::1] pair_lookup, double[::1] log_probs,
                 double[::1] counts, int max_chunk):
    cdef Py_ssize_t i, n_words = word_n.shape[0]
    cdef int n, L, j, l, k, p, cid, pid, mc = max_chunk
    cdef long po, so
    cdef double acc, prev, nxt, lz, total = 0.0, post_b, target
    cdef int max_n = 0, max_l = 0
    for i in range(n_words):
        if word_n[i] > max_n:
            max_n = word_n[i]
        if word_l[i] > max_l:
            max_l = word_l[i]
    la_arr = np.empty((max_n + 1, max_l + 1), dtype=np.float64)
    lb_arr = np.empty((max_n + 1, max_l + 1), dtype=np.float64)
    cdef double[:, ::1] la = la_arr
    cdef double[:, ::1] lb = lb_arr

    for i in range(n_words):
        n = word_n[i]
        L = word_l[i]
        if n == 0 or L < n or L > n * mc:
            continue
        po = phon_off[i]
        so = sub_off[i]

        for j in range(n + 1):
            for l in range(L + 1):
                la[j, l] = NEG_INF
        la[0, 0] = 0.0
        for j in range(1, n + 1):
            p = phon_flat[po + j - 1]
            for l in range(j, (L if L < j * mc else j * mc) + 1):
                acc = NEG_INF
                for k in range(1, (mc if mc < l else l) + 1):
                    prev = la[j - 1, l - k]
                    if prev == NEG_INF:
                        continue
                    cid = sub_flat[so + (l - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pid = pair_lookup[p, cid]
                    if pid < 0:
                        continue
                    acc = _logaddexp(acc, prev + log_probs[pid])
                la[j, l] = acc
        lz = la[n, L]
        if lz == NEG_INF:
            continue
        total += lz

        for j in range(n + 1):
            for l in range(L + 1):
                lb[j, l] = NEG_INF
        lb[n, L] = 0.0
        for j in range(n - 1, -1, -1):
            p = phon_flat[po + j]
            for l in range(j, (L if L < j * mc else j * mc) + 1):
                acc = NEG_INF
                for k in range(1, mc + 1):
                    if l + k > L:
                        break
                    nxt = lb[j + 1, l + k]
                    if nxt == NEG_INF:
                        continue
                    cid = sub_flat[so + (l + k - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pid = pair_lookup[p, cid]
                    if pid < 0:
                        continue
                    acc = _logaddexp(acc, nxt + log_probs[pid])
                lb[j, l] = acc

        for j in range(1, n + 1):
            p = phon_flat[po + j - 1]
            for l in range(j, (L if L < j * mc else j * mc) + 1):
                post_b = lb[j, l]
                if post_b == NEG_INF:
                    continue
                for k in range(1, (mc if mc < l else l) + 1):
                    prev = la[j - 1, l - k]
                    if prev == NEG_INF:
                        continue
                    cid = sub_flat[so + (l - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pid = pair_lookup[p, cid]
                    if pid < 0:
                        continue
                    counts[pid] += exp(prev + log_probs[pid] + post_b - lz)
    return total


def viterbi_batch(int[::1] word_n, int[::1] word_l,
                  int[::1] phon_flat, long[::1] phon_off,
                  int[::1] sub_flat, long[::1] sub_off,
                  int[:, ::1] pair_lookup, double[::1] log_probs,
                  int max_chunk, signed char[::1] out_lens,
                  double[::1] out_scores):
    cdef Py_ssize_t i, n_words = word_n.shape[0]
    cdef int n, L, j, l, k, p, cid, pid, mc = max_chunk
    cdef long po, so
    cdef double best, nxt, v, score, target
    cdef int max_n = 0, max_l = 0
    for i in range(n_words):
        if word_n[i] > max_n:
            max_n = word_n[i]
        if word_l[i] > max_l:
            max_l = word_l[i]
    bt_arr = np.empty((max_n + 1, max_l + 1), dtype=np.float64)
    cdef double[:, ::1] bt = bt_arr

    for i in range(n_words):
        n = word_n[i]
        L = word_l[i]
        po = phon_off[i]
        so = sub_off[i]
        if n == 0 or L < n or L > n * mc:
            out_scores[i] = NEG_INF
            continue

        for j in range(n + 1):
            for l in range(L + 1):
                bt[j, l] = NEG_INF
        bt[n, L] = 0.0
        for j in range(n - 1, -1, -1):
            p = phon_flat[po + j]
            for l in range(j, (L if L < j * mc else j * mc) + 1):
                best = NEG_INF
                for k in range(1, mc + 1):
                    if l + k > L:
                        break
                    nxt = bt[j + 1, l + k]
                    if nxt == NEG_INF:
                        continue
                    cid = sub_flat[so + (l + k - 1) * mc + k - 1]
                    if cid < 0:
                        continue
                    pid = pair_lookup[p, cid]
                    if pid < 0:
                        continue
                    v = log_probs[pid] + nxt
                    if v > best:
                        best = v
                bt[j, l] = best

        score = bt[0, 0]
        out_scores[i] = score
        if score == NEG_INF:
            continue
        l = 0
        for j in range(n):
            p = phon_flat[po + j]
            target = bt[j, l]
            for k in range(1, mc + 1):
                if l + k > L:
                    break
                nxt = bt[j + 1, l + k]
                if nxt == NEG_INF:
                    continue
                cid = sub_flat[so + (l + k - 1) * mc + k - 1]
                if cid < 0:
                    continue
                pid = pair_lookup[p, cid]
                if pid < 0:
                    continue
                if log_probs[pid] + nxt == target:
                    out_lens[po + j] = k
                    l += k
                    break
