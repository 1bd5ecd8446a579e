"""Service configuration: validated at load, unknown keys rejected."""

from __future__ import annotations

import json
import os
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

ENV_VAR = "PHONOBLOCKS_CONFIG"


class Thresholds(BaseModel):
    model_config = ConfigDict(extra="forbid")

    cue_threshold: int = Field(default=2, ge=1)
    auto_threshold: int = Field(default=4, ge=1)
    keyboard_size: int = Field(default=6, ge=2)
    difficulty_percentile: float = Field(default=10.0, ge=0.0, le=100.0)
    interpreter: dict = Field(default_factory=dict)


class ServiceConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dictionary: str = "bundled"
    artifacts_dir: str | None = None
    playground_dir: str | None = None
    log_dir: str = "phonoblocks-logs"
    grid_rows: int = Field(default=8, ge=1)
    grid_cols: int = Field(default=6, ge=1)
    mds_method: str = "classical"
    seed: int = 0
    thresholds: Thresholds = Field(default_factory=Thresholds)

    def scaffold_config(self, seed: int | None = None):
        from phonoblocks.scaffold import ScaffoldConfig

        return ScaffoldConfig(
            keyboard_size=self.thresholds.keyboard_size,
            cue_threshold=self.thresholds.cue_threshold,
            auto_threshold=self.thresholds.auto_threshold,
            difficulty_percentile=self.thresholds.difficulty_percentile,
            seed=self.seed if seed is None else seed,
        )

    def interpreter_config(self):
        from phonoblocks.wordplay import InterpreterConfig

        return InterpreterConfig.from_dict(self.thresholds.interpreter)


def load_config(path: str | Path | None = None) -> ServiceConfig:
    """Load config from an explicit path, else $PHONOBLOCKS_CONFIG, else defaults."""
    if path is None:
        path = os.environ.get(ENV_VAR)
    if path is None:
        return ServiceConfig()
    doc = json.loads(Path(path).read_text())
    return ServiceConfig.model_validate(doc)
