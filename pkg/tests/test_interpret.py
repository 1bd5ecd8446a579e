"""Invented-spelling interpreter behavior."""

import random

import pytest

from phonoblocks.lexicon.alignment import is_alignable, is_trainable
from phonoblocks.wordplay import Block, InterpreterConfig, interpret
from phonoblocks.wordplay.interpret import feature_distance


def letter_blocks(letters):
    return [Block(i + 1, "letter", ch, ch) for i, ch in enumerate(letters)]


def phoneme_blocks(phonemes):
    return [Block(i + 1, "phoneme", p, p) for i, p in enumerate(phonemes)]


def test_empty_input(lexicon):
    assert interpret([], lexicon, 5) == []


def test_k_must_be_positive(lexicon):
    with pytest.raises(ValueError):
        interpret(letter_blocks("AB"), lexicon, 0)


def test_fes_finds_fish(lexicon):
    words = [r.word for r in interpret(letter_blocks("FES"), lexicon, 3)]
    assert "FISH" in words


def test_but_rank_one_beautiful_reachable(lexicon):
    results = interpret(letter_blocks("BUT"), lexicon, 10)
    assert results[0].word == "BUT"
    assert results[0].channel == "logographic"
    words = [r.word for r in results]
    assert "BEAUTIFUL" in words
    beautiful = next(r for r in results if r.word == "BEAUTIFUL")
    assert beautiful.channel == "letterName"  # reached via U = [Y UW]


def test_letter_name_channel_for_e(lexicon):
    results = interpret(letter_blocks("E"), lexicon, 6)
    assert results[0].word == "E"
    iy_starts = [r for r in results if r.phonemes[:1] == ("IY",)]
    assert iy_starts  # something the child might mean by "starts with E"


def test_exact_phoneme_input_rank_one(lexicon):
    res = interpret(phoneme_blocks(("F", "IH", "SH")), lexicon, 3)
    assert res[0].word == "FISH"
    res = interpret(phoneme_blocks(("T", "R", "AH", "K")), lexicon, 3)
    assert res[0].word == "TRUCK"


def test_exact_chunk_input_rank_one_sample(lexicon, cmu_entries):
    rng = random.Random(31)
    prim = [e for e in cmu_entries
            if e.is_primary and is_trainable(e) and is_alignable(e, 4)]
    sample = rng.sample(prim, 50)
    hits = 0
    for e in sample:
        res = interpret(letter_blocks(e.word), lexicon, 1)
        if res and res[0].word == e.word:
            hits += 1
    assert hits / len(sample) >= 0.95


def test_phoneme_input_soundness_sample(lexicon, cmu_entries):
    rng = random.Random(32)
    prim = [e for e in cmu_entries
            if e.is_primary and is_trainable(e) and is_alignable(e, 4)]
    sample = rng.sample(prim, 50)
    hits = 0
    for e in sample:
        res = interpret(phoneme_blocks(e.phonemes), lexicon, 1)
        # a strictly more frequent exact homophone may legitimately win
        if res and (res[0].word == e.word or res[0].phonemes == e.phonemes):
            hits += 1
    assert hits == len(sample)


def test_scores_finite_and_sorted(lexicon):
    results = interpret(letter_blocks("KAT"), lexicon, 8)
    assert all(r.score == r.score and abs(r.score) < 1e9 for r in results)
    scores = [r.score for r in results]
    assert scores == sorted(scores, reverse=True)


def test_deterministic(lexicon):
    a = interpret(letter_blocks("FES"), lexicon, 5)
    b = interpret(letter_blocks("FES"), lexicon, 5)
    assert a == b


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        InterpreterConfig.from_dict({"nope": 1})
    cfg = InterpreterConfig.from_dict({"freq_weight": 0.2})
    assert cfg.freq_weight == 0.2


def test_feature_distance_properties():
    assert feature_distance("K", "K") == 0.0
    assert feature_distance("S", "SH") < feature_distance("S", "AA")
    assert feature_distance("P", "B") == feature_distance("B", "P")
