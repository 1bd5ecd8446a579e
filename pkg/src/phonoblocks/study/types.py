"""Trial-level data types for the sound-finding minigame."""

from __future__ import annotations

from dataclasses import dataclass

TEST_PHONEMES = ("R", "W", "K", "Z", "M", "S", "D", "F")
PRACTICE_PHONEMES = ("T", "B")
CONDITIONS = ("letter", "creature")
MAX_ATTEMPTS = 3


@dataclass(frozen=True)
class TrialSpec:
    child_id: str
    phoneme: str
    condition: str  # letter | creature
    session: int    # 1 | 2

    def __post_init__(self):
        if self.phoneme not in TEST_PHONEMES + PRACTICE_PHONEMES:
            raise ValueError(f"{self.phoneme!r} is not a minigame phoneme")
        if self.condition not in CONDITIONS:
            raise ValueError(f"unknown condition {self.condition!r}")
        if self.session not in (1, 2):
            raise ValueError("session must be 1 or 2")

    @property
    def is_practice(self) -> bool:
        return self.phoneme in PRACTICE_PHONEMES


@dataclass(frozen=True)
class TrialRecord:
    spec: TrialSpec
    errors: int
    censored: bool
    time_seconds: float | None

    def __post_init__(self):
        if not 0 <= self.errors <= MAX_ATTEMPTS:
            raise ValueError("errors must be 0..3")
        if self.censored != (self.errors == MAX_ATTEMPTS):
            raise ValueError("censored exactly when all attempts failed")
        if self.censored != (self.time_seconds is None):
            raise ValueError("time recorded exactly for uncensored trials")
        if self.time_seconds is not None and self.time_seconds <= 0:
            raise ValueError("time must be positive")

    def to_json(self) -> dict:
        return {
            "child_id": self.spec.child_id,
            "phoneme": self.spec.phoneme,
            "condition": self.spec.condition,
            "session": self.spec.session,
            "errors": self.errors,
            "censored": self.censored,
            "time_ms": None if self.time_seconds is None
            else int(round(self.time_seconds * 1000)),
        }

    @classmethod
    def from_json(cls, row: dict) -> "TrialRecord":
        spec = TrialSpec(row["child_id"], row["phoneme"], row["condition"],
                         row["session"])
        time_ms = row.get("time_ms")
        return cls(spec, row["errors"], row["censored"],
                   None if time_ms is None else time_ms / 1000.0)


@dataclass(frozen=True)
class GenParams:
    """Generative parameters for one response family's linear predictor."""

    b0: float
    b_cond: float
    sd_child_int: float
    sd_child_slope: float
    corr: float
    sd_item_int: float
    sd_item_slope: float
    sigma: float = 0.0  # time model only

    def __post_init__(self):
        for name in ("sd_child_int", "sd_child_slope", "sd_item_int",
                     "sd_item_slope", "sigma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if not -1.0 <= self.corr <= 1.0:
            raise ValueError("corr must be in [-1, 1]")


def default_gen_params(response: str) -> GenParams:
    """Defaults anchored to the published condition-effect and slope-spread
    estimates; intercepts and spreads chosen to match the descriptive scale."""
    if response == "times":
        return GenParams(b0=1.15, b_cond=-0.14, sd_child_int=0.5,
                         sd_child_slope=0.28, corr=0.0,
                         sd_item_int=0.3, sd_item_slope=0.1, sigma=1.0)
    if response == "errors":
        return GenParams(b0=-1.3, b_cond=-0.38, sd_child_int=0.7,
                         sd_child_slope=0.94, corr=0.0,
                         sd_item_int=0.3, sd_item_slope=0.1)
    raise ValueError(f"unknown response {response!r}")
