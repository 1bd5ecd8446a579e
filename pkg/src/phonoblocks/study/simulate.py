"""Generative mirror of the fitted models.

Times and errors get separate linear predictors with independent random
effects (the acceptance-grade synthetic datasets carry the published
point estimates for both families at once).  A trial's error count is
geometric with success probability 1/(1+mu), mu = exp(eta), right-
censored at three attempts; a censored trial records no time.
"""

from __future__ import annotations

import numpy as np

from phonoblocks.study.types import (
    GenParams,
    MAX_ATTEMPTS,
    TrialRecord,
    TrialSpec,
    default_gen_params,
)


def _bvn_effects(rng, n, sd_int, sd_slope, corr):
    cov = np.array([
        [sd_int ** 2, corr * sd_int * sd_slope],
        [corr * sd_int * sd_slope, sd_slope ** 2],
    ])
    # tiny jitter keeps the factorization defined when an sd is zero
    lower = np.linalg.cholesky(cov + np.eye(2) * 1e-12)
    z = rng.standard_normal((n, 2))
    return z @ lower.T


def simulate_minigame(specs: list[TrialSpec],
                      times: GenParams | None = None,
                      errors: GenParams | None = None,
                      seed: int = 0) -> list[TrialRecord]:
    if times is None:
        times = default_gen_params("times")
    if errors is None:
        errors = default_gen_params("errors")
    rng = np.random.default_rng(seed)

    children = list(dict.fromkeys(s.child_id for s in specs))
    items = sorted({s.phoneme for s in specs})
    child_index = {c: i for i, c in enumerate(children)}
    item_index = {p: i for i, p in enumerate(items)}

    effects = {}
    for family, params in (("times", times), ("errors", errors)):
        effects[family] = {
            "child": _bvn_effects(rng, len(children), params.sd_child_int,
                                  params.sd_child_slope, params.corr),
            "item": _bvn_effects(rng, len(items), params.sd_item_int,
                                 params.sd_item_slope, params.corr),
        }

    records = []
    for spec in specs:
        x = 1.0 if spec.condition == "letter" else 0.0
        ci, ii = child_index[spec.child_id], item_index[spec.phoneme]

        eta_e = (errors.b0 + errors.b_cond * x
                 + effects["errors"]["child"][ci, 0]
                 + effects["errors"]["child"][ci, 1] * x
                 + effects["errors"]["item"][ii, 0]
                 + effects["errors"]["item"][ii, 1] * x)
        p = 1.0 / (1.0 + np.exp(eta_e))
        k = int(rng.geometric(p) - 1)  # failures before first success

        eta_t = (times.b0 + times.b_cond * x
                 + effects["times"]["child"][ci, 0]
                 + effects["times"]["child"][ci, 1] * x
                 + effects["times"]["item"][ii, 0]
                 + effects["times"]["item"][ii, 1] * x)
        t = float(np.exp(rng.normal(eta_t, times.sigma)))

        if k >= MAX_ATTEMPTS:
            records.append(TrialRecord(spec, MAX_ATTEMPTS, True, None))
        else:
            records.append(TrialRecord(spec, k, False, t))
    return records
