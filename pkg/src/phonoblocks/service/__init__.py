"""HTTP service, session store, replay, and configuration."""

from phonoblocks.service.app import build_app_from_config, create_app
from phonoblocks.service.config import ServiceConfig, Thresholds, load_config
from phonoblocks.service.minigame import (
    MinigameError,
    MinigameState,
    answer,
    keyboard_json,
    start_minigame,
)
from phonoblocks.service.sessions import (
    ReplayError,
    Session,
    SessionError,
    SessionStore,
    replay,
)

__all__ = [
    "MinigameError",
    "MinigameState",
    "ReplayError",
    "ServiceConfig",
    "Session",
    "SessionError",
    "SessionStore",
    "Thresholds",
    "answer",
    "build_app_from_config",
    "create_app",
    "keyboard_json",
    "load_config",
    "replay",
    "start_minigame",
]
