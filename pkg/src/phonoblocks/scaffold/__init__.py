"""Scaffolded word construction: planner, state machine, simulated learner."""

from phonoblocks.scaffold.machine import (
    KeyboardBlock,
    ProtocolError,
    ScaffoldConfig,
    ScaffoldError,
    ScaffoldEvent,
    ScaffoldPlan,
    ScaffoldState,
    initial_state,
    plan,
    step,
)
from phonoblocks.scaffold.simulate import (
    LearnerPolicy,
    SimStep,
    Transcript,
    simulate,
    word_suggestions,
)

__all__ = [
    "KeyboardBlock",
    "LearnerPolicy",
    "ProtocolError",
    "ScaffoldConfig",
    "ScaffoldError",
    "ScaffoldEvent",
    "ScaffoldPlan",
    "ScaffoldState",
    "SimStep",
    "Transcript",
    "initial_state",
    "plan",
    "simulate",
    "step",
    "word_suggestions",
]
