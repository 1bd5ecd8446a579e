"""Sound-finding minigame: trial design, simulation, and Bayesian analysis."""

from phonoblocks.study.types import (
    CONDITIONS,
    GenParams,
    MAX_ATTEMPTS,
    PRACTICE_PHONEMES,
    TEST_PHONEMES,
    TrialRecord,
    TrialSpec,
    default_gen_params,
)
from phonoblocks.study.design import check_pairing, design_trials
from phonoblocks.study.simulate import simulate_minigame
from phonoblocks.study.descriptives import (
    DescriptiveRow,
    descriptives,
    descriptives_text,
    five_number,
)
from phonoblocks.study.sampler import (
    FitError,
    McmcConfig,
    ModelFit,
    PosteriorDraw,
    fit_error_model,
    fit_time_model,
    split_rhat,
)
from phonoblocks.study.fractions import (
    DEFAULT_THRESHOLDS,
    FractionRow,
    FractionTable,
    point_mass_fit,
    virtual_population,
)

__all__ = [
    "CONDITIONS",
    "DEFAULT_THRESHOLDS",
    "DescriptiveRow",
    "FitError",
    "FractionRow",
    "FractionTable",
    "GenParams",
    "MAX_ATTEMPTS",
    "McmcConfig",
    "ModelFit",
    "PRACTICE_PHONEMES",
    "PosteriorDraw",
    "TEST_PHONEMES",
    "TrialRecord",
    "TrialSpec",
    "check_pairing",
    "default_gen_params",
    "descriptives",
    "descriptives_text",
    "design_trials",
    "fit_error_model",
    "fit_time_model",
    "five_number",
    "point_mass_fit",
    "simulate_minigame",
    "split_rhat",
    "virtual_population",
]
