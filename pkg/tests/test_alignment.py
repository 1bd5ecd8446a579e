"""Alignment training and decoding, checked against independent oracles."""

import itertools
import math
import random

import pytest

from phonoblocks.lexicon import align, parse_dictionary, train_alignment
from phonoblocks.lexicon.alignment import (
    AlignedEntry,
    AlignmentError,
    AlignmentModel,
    align_batch,
    is_alignable,
    is_trainable,
)
from phonoblocks.lexicon.parser import PronEntry


def brute_force_best(entry, model):
    """Enumerate every segmentation; return (best_score, chunks).

    Ties prefer the lexicographically smallest chunk-length tuple, matching
    the decoder's documented tie-break.  Independent of the lattice code.
    """
    n, word = len(entry.phonemes), entry.word
    best = None
    for lens in itertools.product(range(1, model.max_chunk + 1), repeat=n):
        if sum(lens) != len(word):
            continue
        pos = 0
        score = 0.0
        chunks = []
        ok = True
        for p, k in zip(entry.phonemes, lens):
            chunk = word[pos:pos + k]
            lp = model.log_prob(p, chunk)
            if lp == float("-inf"):
                ok = False
                break
            score += lp
            chunks.append(chunk)
            pos += k
        if not ok:
            continue
        key = (-score, lens)
        if best is None or key < best[0]:
            best = (key, score, tuple(chunks))
    if best is None:
        return None
    return best[1], best[2]


def test_single_forced_segmentation():
    entries = parse_dictionary("A  AH0")
    model = train_alignment(entries, max_chunk=4)
    assert model.probs["AH"] == {"A": 1.0}
    a = align(entries[0], model)
    assert a.chunks == ("A",)
    assert a.score == 0.0


def test_three_word_corpus_pins_t():
    entries = parse_dictionary("CAT  K AE1 T\nAT  AE1 T\nTAT  T AE1 T")
    model = train_alignment(entries, max_chunk=4)
    assert model.probs["T"] == {"T": 1.0}
    assert model.probs["K"] == {"C": 1.0}
    assert model.probs["AE"] == {"A": 1.0}


def test_iteration_cap_runs_exactly_once():
    entries = parse_dictionary("CAT  K AE1 T\nTRUCK  T R AH1 K")
    trace = []
    model = train_alignment(entries, max_iterations=1, tolerance=0.0,
                            loglik_trace=trace)
    assert model.iterations == 1
    assert len(trace) == 1


def test_em_loglik_monotone(toy_entries):
    trace = []
    train_alignment(toy_entries, max_iterations=30, tolerance=0.0,
                    loglik_trace=trace)
    assert all(b - a >= -1e-9 for a, b in zip(trace, trace[1:]))


def test_unalignable_entries_reported():
    entries = parse_dictionary("A  AH0 B IY0 S IY1\nOK  OW2 K")
    excluded = []
    model = train_alignment(entries, max_chunk=4, excluded=excluded)
    assert len(excluded) == 1
    assert excluded[0][0].word == "A"
    assert "length" in excluded[0][1]
    assert "OW" in model.probs


def test_non_alphabetic_entries_reported():
    entries = parse_dictionary("A.D.  EY2 D IY1\nCAT  K AE1 T")
    excluded = []
    train_alignment(entries, excluded=excluded)
    assert any(e.word == "A.D." for e, _ in excluded)


def test_align_error_for_impossible_entry(toy_entries):
    model = train_alignment(toy_entries)
    with pytest.raises(AlignmentError):
        align(PronEntry("ABCDEFGHI", 1, ("AH", "T")), model)


def test_probabilities_normalized(toy_entries):
    model = train_alignment(toy_entries)
    model.validate(tol=1e-9)


def test_chunk_concatenation_invariant(toy_entries):
    model = train_alignment(toy_entries)
    for e in toy_entries:
        if is_trainable(e) and is_alignable(e, model.max_chunk):
            a = align(e, model)
            assert "".join(a.chunks) == e.word
            assert len(a.chunks) == len(e.phonemes)
            assert all(1 <= len(c) <= model.max_chunk for c in a.chunks)


def test_aligned_entry_invariants():
    with pytest.raises(ValueError):
        AlignedEntry("CAT", ("K", "AE", "T"), ("C", "A"), 0.0)
    with pytest.raises(ValueError):
        AlignedEntry("CAT", ("K", "AE", "T"), ("C", "AT"), 0.0)
    AlignedEntry("CAT", ("K", "AE", "T"), ("C", "A", "T"), 0.0)


def test_viterbi_matches_brute_force_toy(toy_entries):
    model = train_alignment(toy_entries)
    for e in toy_entries:
        got = align(e, model)
        want_score, want_chunks = brute_force_best(e, model)
        assert math.isclose(got.score, want_score, rel_tol=0, abs_tol=1e-9)
        assert got.chunks == want_chunks


def test_fish_and_truck_against_oracle(lexicon):
    fish = lexicon.primary("FISH")
    got = align(fish, lexicon.model)
    want_score, want_chunks = brute_force_best(fish, lexicon.model)
    assert math.isclose(got.score, want_score, abs_tol=1e-9)
    assert got.chunks == want_chunks == ("F", "I", "SH")

    truck = lexicon.primary("TRUCK")
    got = align(truck, lexicon.model)
    want_score, want_chunks = brute_force_best(truck, lexicon.model)
    assert math.isclose(got.score, want_score, abs_tol=1e-9)
    assert got.chunks == want_chunks == ("T", "R", "U", "CK")


def test_viterbi_oracle_random_sample(lexicon, cmu_entries):
    """Spot version of the acceptance oracle run (small sample for speed)."""
    rng = random.Random(21)
    short = [e for e in cmu_entries
             if e.is_primary and is_trainable(e) and len(e.word) <= 6
             and is_alignable(e, lexicon.model.max_chunk)]
    sample = rng.sample(short, 100)
    results = align_batch(sample, lexicon.model)
    for e, got in zip(sample, results):
        oracle = brute_force_best(e, lexicon.model)
        if oracle is None:
            assert got is None
            continue
        want_score, want_chunks = oracle
        assert got is not None
        assert math.isclose(got.score, want_score, abs_tol=1e-9), e.word
        assert got.chunks == want_chunks, e.word


def test_determinism_byte_identical(toy_entries):
    m1 = train_alignment(toy_entries)
    m2 = train_alignment(toy_entries)
    assert m1.to_json() == m2.to_json()


def test_model_roundtrip(tmp_path, toy_entries):
    model = train_alignment(toy_entries)
    path = tmp_path / "model.json"
    model.save(path)
    loaded = AlignmentModel.load(path)
    assert loaded.probs == model.probs
    assert loaded.max_chunk == model.max_chunk
