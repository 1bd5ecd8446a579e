"""Simulated learner for closed-loop scaffold testing, plus the static
word-suggestion source that stands in for the richer input channels."""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from importlib import resources

from phonoblocks.lexicon.lexicon import Lexicon
from phonoblocks.scaffold.machine import (
    ScaffoldPlan,
    ScaffoldState,
    initial_state,
    step,
)


@dataclass(frozen=True)
class LearnerPolicy:
    """How often the simulated child picks the right block.

    pair_knowledge maps (phoneme, chunk) to a success probability;
    anything absent uses default_knowledge.  Latencies are log-normal.
    """

    pair_knowledge: dict = field(default_factory=dict)
    default_knowledge: float = 0.8
    slip_rate: float = 0.05
    latency_mu: float = 0.8     # ln seconds
    latency_sigma: float = 0.6
    seed: int = 0

    def __post_init__(self):
        probs = list(self.pair_knowledge.values()) + [self.default_knowledge]
        if not all(0.0 <= p <= 1.0 for p in probs):
            raise ValueError("knowledge probabilities must be in [0, 1]")
        if not 0.0 <= self.slip_rate <= 1.0:
            raise ValueError("slip rate must be in [0, 1]")


@dataclass(frozen=True)
class SimStep:
    action: dict
    latency_seconds: float
    events: tuple


@dataclass(frozen=True)
class Transcript:
    word: str
    steps: tuple[SimStep, ...]
    final_state: ScaffoldState

    def event_kinds(self) -> list[str]:
        kinds = [e.kind for e in self.final_state.log]
        return kinds

    def to_json_lines(self) -> str:
        lines = []
        for s in self.steps:
            lines.append(json.dumps({
                "action": s.action,
                "latency_s": round(s.latency_seconds, 4),
                "events": [e.to_json() for e in s.events],
            }))
        return "\n".join(lines) + ("\n" if lines else "")


def simulate(plan_: ScaffoldPlan, policy: LearnerPolicy,
             lexicon: Lexicon) -> Transcript:
    """Run a plan against a stochastic learner; deterministic per seed."""
    rng = random.Random(policy.seed)
    state = initial_state(plan_, lexicon)
    steps: list[SimStep] = []
    while not state.complete:
        chunk, phoneme = plan_.steps[state.step_index]
        know = policy.pair_knowledge.get((phoneme, chunk),
                                         policy.default_knowledge)
        p_correct = know * (1.0 - policy.slip_rate)
        latency = math.exp(rng.gauss(policy.latency_mu, policy.latency_sigma))
        target = state.target_block
        if rng.random() < p_correct:
            action = {"pick": target.id}
        else:
            distractors = [b for b in state.keyboard if b.id != target.id]
            action = {"pick": rng.choice(distractors).id}
        state, events = step(state, action, lexicon)
        steps.append(SimStep(action, latency, tuple(events)))
    return Transcript(plan_.target_word, tuple(steps), state)


_FALLBACK_CACHE: dict[int, list[str]] = {}


def word_suggestions(topic: str, lexicon: Lexicon, limit: int = 12) -> list[str]:
    """Words for a topic from the bundled list; frequent short words otherwise."""
    if len(lexicon) == 0:
        return []
    topics = json.loads(
        resources.files("phonoblocks.data").joinpath("topics.json").read_text())
    words = topics.get(topic.lower().strip())
    if words:
        usable = [w for w in words if w in lexicon and lexicon.aligned(w)]
        return usable[:limit]
    key = id(lexicon)
    if key not in _FALLBACK_CACHE:
        short = [w for w, count in lexicon.frequencies.items()
                 if 3 <= len(w) <= 5 and w.isalpha() and w in lexicon
                 and lexicon.aligned(w) is not None]
        short.sort(key=lambda w: (-lexicon.word_frequency(w), w))
        _FALLBACK_CACHE[key] = short[:50]
    return _FALLBACK_CACHE[key][:limit]
