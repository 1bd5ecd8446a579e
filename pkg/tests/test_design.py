import pytest

from phonoblocks.study import TEST_PHONEMES, check_pairing, design_trials


def test_26_children_416_test_trials():
    trials = design_trials([f"c{i}" for i in range(26)], seed=1)
    test = [t for t in trials if not t.is_practice]
    assert len(test) == 26 * 8 * 2 == 416


def test_pairing_invariant_exact():
    trials = design_trials([f"c{i}" for i in range(9)], seed=3)
    check_pairing(trials)
    # and explicitly: per child/phoneme both sessions used once
    for child in {t.child_id for t in trials}:
        for ph in TEST_PHONEMES:
            mine = [t for t in trials
                    if t.child_id == child and t.phoneme == ph]
            assert sorted(t.session for t in mine) == [1, 2]
            assert sorted(t.condition for t in mine) == ["creature", "letter"]


def test_conditions_balanced_within_child():
    trials = design_trials([f"c{i}" for i in range(12)], seed=5)
    for child in {t.child_id for t in trials}:
        s1_letter = [t for t in trials
                     if t.child_id == child and t.session == 1
                     and not t.is_practice and t.condition == "letter"]
        assert len(s1_letter) == 4  # half of the eight phonemes


def test_practice_prepended_each_session():
    trials = design_trials(["kid"], seed=0)
    s1 = [t for t in trials if t.session == 1]
    s2 = [t for t in trials if t.session == 2]
    assert [t.phoneme for t in s1[:2]] == ["T", "B"]
    assert [t.phoneme for t in s2[:2]] == ["T", "B"]
    assert all(not t.is_practice for t in s1[2:])
    assert len(s1) == len(s2) == 10


def test_same_seed_same_schedule():
    a = design_trials([f"c{i}" for i in range(5)], seed=9)
    b = design_trials([f"c{i}" for i in range(5)], seed=9)
    assert a == b
    c = design_trials([f"c{i}" for i in range(5)], seed=10)
    assert a != c


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        design_trials([], seed=0)
    with pytest.raises(ValueError):
        design_trials(["a", "a"], seed=0)
