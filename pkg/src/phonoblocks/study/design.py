"""Two-session paired trial schedules.

Each child meets every test phoneme once per condition, and the two
occurrences land in different sessions (so a key's location cannot be
remembered across conditions within a session).  Which condition comes
first is balanced within each child: a seeded draw puts exactly half
the phonemes letter-first.  Both sessions open with the two practice
phonemes, excluded from analysis.
"""

from __future__ import annotations

import random

from phonoblocks.study.types import (
    PRACTICE_PHONEMES,
    TEST_PHONEMES,
    TrialSpec,
)


def design_trials(child_ids: list[str], seed: int = 0) -> list[TrialSpec]:
    if not child_ids:
        raise ValueError("need at least one child")
    if len(set(child_ids)) != len(child_ids):
        raise ValueError("child ids must be unique")
    rng = random.Random(f"minigame-design:{seed}")
    trials: list[TrialSpec] = []
    for child in child_ids:
        letter_first = set(rng.sample(TEST_PHONEMES, len(TEST_PHONEMES) // 2))
        per_session: dict[int, list[TrialSpec]] = {1: [], 2: []}
        # practice pairs alternate conditions across sessions, fixed pattern
        per_session[1].append(TrialSpec(child, PRACTICE_PHONEMES[0], "letter", 1))
        per_session[1].append(TrialSpec(child, PRACTICE_PHONEMES[1], "creature", 1))
        per_session[2].append(TrialSpec(child, PRACTICE_PHONEMES[0], "creature", 2))
        per_session[2].append(TrialSpec(child, PRACTICE_PHONEMES[1], "letter", 2))
        session_tests: dict[int, list[TrialSpec]] = {1: [], 2: []}
        for phoneme in TEST_PHONEMES:
            first = "letter" if phoneme in letter_first else "creature"
            second = "creature" if first == "letter" else "letter"
            session_tests[1].append(TrialSpec(child, phoneme, first, 1))
            session_tests[2].append(TrialSpec(child, phoneme, second, 2))
        for s in (1, 2):
            rng.shuffle(session_tests[s])
            trials.extend(per_session[s])
            trials.extend(session_tests[s])
    return trials


def check_pairing(trials: list[TrialSpec]) -> None:
    """Raise if the once-per-condition / different-sessions pairing fails."""
    seen: dict[tuple[str, str], dict[str, int]] = {}
    for t in trials:
        if t.is_practice:
            continue
        key = (t.child_id, t.phoneme)
        conditions = seen.setdefault(key, {})
        if t.condition in conditions:
            raise AssertionError(f"{key}: condition {t.condition} repeated")
        conditions[t.condition] = t.session
    for key, conditions in seen.items():
        if set(conditions) != {"letter", "creature"}:
            raise AssertionError(f"{key}: missing a condition")
        if conditions["letter"] == conditions["creature"]:
            raise AssertionError(f"{key}: both conditions in one session")
