import random

import pytest

from phonoblocks import inventory
from phonoblocks.scaffold import (
    LearnerPolicy,
    ProtocolError,
    ScaffoldConfig,
    ScaffoldError,
    initial_state,
    plan,
    simulate,
    step,
    word_suggestions,
)


def kinds(events):
    return [e.kind for e in events]


def test_plan_cat_three_steps(lexicon):
    p = plan("CAT", lexicon)
    assert p.target_word == "CAT"
    assert [c for c, _ in p.steps] == ["C", "A", "T"]
    assert [ph for _, ph in p.steps] == ["K", "AE", "T"]
    # every CAT pair is frequent, nothing preassembled
    assert p.preassembled == (False, False, False)


def test_plan_rejects_unknown_words(lexicon):
    with pytest.raises(ScaffoldError):
        plan("", lexicon)
    with pytest.raises(ScaffoldError):
        plan("ZZXQJ", lexicon)


def test_plan_preassembles_rare_or_long(lexicon):
    # find a word whose alignment contains a 3+ letter chunk
    p = plan("THOUGHT", lexicon)
    chunks = [c for c, _ in p.steps]
    assert any(len(c) >= 3 for c in chunks)
    for (c, ph), pre in zip(p.steps, p.preassembled):
        if len(c) >= 3:
            assert pre


def test_perfect_picks_on_cat(lexicon):
    p = plan("CAT", lexicon)
    state = initial_state(p, lexicon)
    while not state.complete:
        state, _ = step(state, {"pick": state.target_block.id}, lexicon)
    k = kinds(state.log)
    assert k.count("place") == 3
    assert k.count("cue") == 0
    assert k.count("autoPlace") == 0
    assert k.count("complete") == 1
    assert state.placed == ("C", "A", "T")


def test_event_order_per_step(lexicon):
    p = plan("CAT", lexicon)
    state = initial_state(p, lexicon)
    assert kinds(state.log)[:2] == ["enunciate", "offerKeyboard"]
    while not state.complete:
        state, _ = step(state, {"pick": state.target_block.id}, lexicon)
    k = kinds(state.log)
    # every step: enunciate, offerKeyboard, then its placement
    assert k == ["enunciate", "offerKeyboard", "place"] * 3 + ["complete"]


def test_cue_after_two_wrong(lexicon):
    cfg = ScaffoldConfig(cue_threshold=2, auto_threshold=4)
    p = plan("CAT", lexicon, cfg)
    state = initial_state(p, lexicon)
    wrong = next(b for b in state.keyboard if b.id != state.target_block.id)
    state, ev1 = step(state, {"pick": wrong.id}, lexicon)
    assert kinds(ev1) == ["reject"]
    state, ev2 = step(state, {"pick": wrong.id}, lexicon)
    assert kinds(ev2) == ["reject", "cue"]
    assert ev2[1].detail["target"] == state.target_block.id


def test_autoplace_after_four_wrong(lexicon):
    cfg = ScaffoldConfig(cue_threshold=2, auto_threshold=4)
    p = plan("CAT", lexicon, cfg)
    state = initial_state(p, lexicon)
    for i in range(4):
        wrong = next(b for b in state.keyboard if b.id != state.target_block.id)
        state, ev = step(state, {"pick": wrong.id}, lexicon)
    assert "autoPlace" in kinds(state.log)
    assert state.placed == ("C",)
    assert state.step_index == 1


def test_timeout_counts_as_wrong(lexicon):
    p = plan("CAT", lexicon)
    state = initial_state(p, lexicon)
    state, ev = step(state, {"timeout": True}, lexicon)
    assert kinds(ev) == ["reject"]
    assert ev[0].detail["picked"] == "timeout"
    assert state.attempts_at_step == 1


def test_unknown_block_protocol_error(lexicon):
    p = plan("CAT", lexicon)
    state = initial_state(p, lexicon)
    with pytest.raises(ProtocolError):
        step(state, {"pick": "nonsense"}, lexicon)


def test_step_after_complete_rejected(lexicon):
    p = plan("CAT", lexicon)
    state = initial_state(p, lexicon)
    while not state.complete:
        state, _ = step(state, {"pick": state.target_block.id}, lexicon)
    with pytest.raises(ScaffoldError):
        step(state, {"pick": "x"}, lexicon)


def test_keyboard_contains_target_and_same_class_distractors(lexicon):
    p = plan("CAT", lexicon)
    state = initial_state(p, lexicon)
    target = state.target_block
    assert target.phoneme == "K"
    assert len(state.keyboard) == p.config.keyboard_size
    assert len({b.id for b in state.keyboard}) == len(state.keyboard)
    klass = inventory.get("K").klass
    same = [b for b in state.keyboard
            if b.id != target.id and inventory.get(b.phoneme).klass == klass]
    assert len(same) >= 1


def test_plan_deterministic(lexicon):
    cfg = ScaffoldConfig(seed=42)
    p1, p2 = plan("FISH", lexicon, cfg), plan("FISH", lexicon, cfg)
    assert p1 == p2
    s1, s2 = initial_state(p1, lexicon), initial_state(p2, lexicon)
    assert s1.keyboard == s2.keyboard


def test_perfect_learner_never_cued(lexicon):
    policy = LearnerPolicy(default_knowledge=1.0, slip_rate=0.0, seed=1)
    for word in ("CAT", "FISH", "TRUCK", "DOG"):
        t = simulate(plan(word, lexicon), policy, lexicon)
        k = t.event_kinds()
        assert k.count("cue") == 0
        assert k.count("autoPlace") == 0
        assert "".join(t.final_state.placed) == word


def test_zero_knowledge_all_autoplaced(lexicon):
    policy = LearnerPolicy(default_knowledge=0.0, seed=2)
    p = plan("CAT", lexicon)
    t = simulate(p, policy, lexicon)
    k = t.event_kinds()
    assert k.count("autoPlace") == sum(1 for pre in p.preassembled if not pre)
    assert "".join(t.final_state.placed) == "CAT"


def test_simulation_deterministic(lexicon):
    policy = LearnerPolicy(default_knowledge=0.5, seed=77)
    p = plan("TRUCK", lexicon)
    t1 = simulate(p, policy, lexicon)
    t2 = simulate(p, policy, lexicon)
    assert t1.to_json_lines() == t2.to_json_lines()


def test_termination_and_prefix_correctness_random(lexicon, cmu_entries):
    rng = random.Random(5)
    words = [w for w in ("CAT", "DOG", "FISH", "TRUCK", "APPLE", "GREEN",
                         "HOUSE", "WATER", "HAPPY", "STONE")]
    for word in words:
        for trial in range(3):
            policy = LearnerPolicy(default_knowledge=rng.random(),
                                   slip_rate=rng.random() * 0.3,
                                   seed=rng.randint(0, 10_000))
            p = plan(word, lexicon)
            t = simulate(p, policy, lexicon)
            n_actions = len(t.steps)
            assert n_actions <= len(p.steps) * p.config.auto_threshold
            assert t.final_state.complete
            # prefix correctness at every point in the log
            placed = []
            for ev in t.final_state.log:
                if ev.kind in ("place", "autoPlace", "preassemble"):
                    placed.append(ev.detail["chunk"])
                    want = [c for c, _ in p.steps][:len(placed)]
                    assert placed == want


def test_target_always_on_keyboard(lexicon):
    for word in ("CAT", "FISH", "GREEN"):
        p = plan(word, lexicon)
        state = initial_state(p, lexicon)
        while not state.complete:
            assert state.target_block is not None
            assert any(b.id == state.target_block.id for b in state.keyboard)
            state, _ = step(state, {"pick": state.target_block.id}, lexicon)


def test_word_suggestions_topics(lexicon):
    animals = word_suggestions("animals", lexicon)
    assert "CAT" in animals
    assert all(w in lexicon for w in animals)
    fallback = word_suggestions("notatopic", lexicon)
    assert fallback
    assert all(w in lexicon for w in fallback)


def test_word_suggestions_empty_lexicon():
    from phonoblocks.lexicon.alignment import AlignmentModel
    from phonoblocks.lexicon.lexicon import Lexicon

    empty = Lexicon([], AlignmentModel({}, 4), [], [], top_n=80)
    assert word_suggestions("animals", empty) == []
