"""Row-level likelihoods and priors for the mixed-effects models.

Time model: log seconds ~ Normal(eta, sigma).  Error model: failures
before success k with P(k) = p(1-p)^k, p = 1/(1+mu), mu = exp(eta) (log
link on the mean); k = 3 is right-censored with mass (1-p)^3.  Both use
eta = b0 + bCond*x + child intercept/slope + item intercept/slope.
Priors: Normal(0, 2.5^2) fixed effects, half-Normal(1) scales, LKJ(2)
correlations.
"""

from __future__ import annotations

import math

import numpy as np

LOG_2PI = math.log(2.0 * math.pi)
FIXED_PRIOR_SD = 2.5


def softplus(eta: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, eta)


def normal_rows(y_log: np.ndarray, eta: np.ndarray, sigma: float) -> np.ndarray:
    z = (y_log - eta) / sigma
    return -0.5 * z * z - math.log(sigma) - 0.5 * LOG_2PI


def geometric_rows(k: np.ndarray, censored: np.ndarray,
                   eta: np.ndarray) -> np.ndarray:
    """Censored geometric log-mass per trial."""
    sp = softplus(eta)
    uncens = k * eta - (k + 1.0) * sp
    cens = 3.0 * (eta - sp)
    return np.where(censored, cens, uncens)


def geometric_pmf(k: int, p: float) -> float:
    """Uncensored mass; k is the number of failures before success."""
    return p * (1.0 - p) ** k


def geometric_tail(k_min: int, p: float) -> float:
    """P(K >= k_min)."""
    return (1.0 - p) ** k_min


def fixed_prior(value: float) -> float:
    return -0.5 * (value / FIXED_PRIOR_SD) ** 2


def half_normal_prior(value: float, scale: float = 1.0) -> float:
    if value < 0:
        return -math.inf
    return -0.5 * (value / scale) ** 2


def lkj2_prior(r: float) -> float:
    if not -1.0 < r < 1.0:
        return -math.inf
    return math.log1p(-r * r)


def bvn_logpdf(u0: np.ndarray, u1: np.ndarray, sd0: float, sd1: float,
               r: float) -> np.ndarray:
    """Per-group log density of intercept/slope pairs."""
    if sd0 <= 0 or sd1 <= 0 or not -1.0 < r < 1.0:
        return np.full(len(u0), -np.inf)
    z0 = u0 / sd0
    z1 = u1 / sd1
    om = 1.0 - r * r
    quad = (z0 * z0 - 2.0 * r * z0 * z1 + z1 * z1) / om
    return -0.5 * quad - math.log(sd0) - math.log(sd1) \
        - 0.5 * math.log(om) - LOG_2PI
