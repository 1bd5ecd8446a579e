"""Adaptive random-walk Metropolis-within-Gibbs for the mixed models.

The maximal random-effect structure (intercept+slope pairs for children
and items, correlated within each grouping) is sampled in blocks: fixed
effects and hyperparameters as scalar random walks, the random-effect
vectors as parallel per-group walks accepted independently (their full
conditionals factor across groups).  Scale parameters propose with
reflection at zero and correlations reflect into (-1, 1), keeping the
kernels symmetric.  Step sizes adapt toward a 0.3-0.5 acceptance rate
during warmup only; given a seed, a fit is fully deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from phonoblocks.study import models
from phonoblocks.study.types import TrialRecord

TIME_PARAMS = ("b0", "bCond", "sdChildInt", "sdChildSlope", "corrChild",
               "sdItemInt", "sdItemSlope", "corrItem", "sigma")
ERROR_PARAMS = TIME_PARAMS[:-1]

RHAT_LIMIT = 1.05


class FitError(ValueError):
    pass


@dataclass
class McmcConfig:
    chains: int = 4
    iterations: int = 4000  # total per chain, warmup included
    warmup: int = 1000
    seed: int = 0
    adapt_interval: int = 50
    accept_low: float = 0.3
    accept_high: float = 0.5
    likelihood_on: bool = True   # prior-only sampling when False
    item_slopes: bool = True

    def __post_init__(self):
        if self.warmup >= self.iterations:
            raise FitError("warmup must be smaller than iterations")
        if self.chains < 1:
            raise FitError("need at least one chain")


@dataclass(frozen=True)
class PosteriorDraw:
    b0: float
    bCond: float
    sdChildInt: float
    sdChildSlope: float
    corrChild: float
    sdItemInt: float
    sdItemSlope: float
    corrItem: float
    sigma: float | None = None


@dataclass
class ModelFit:
    response: str                 # times | errors
    params: tuple[str, ...]
    draws: dict[str, np.ndarray]  # name -> (chains*kept,)
    chains: int
    kept: int
    rhat: dict[str, float]
    converged: bool
    config: McmcConfig
    notes: dict = field(default_factory=dict)

    def draw_records(self) -> list[PosteriorDraw]:
        n = self.chains * self.kept
        sigma = self.draws.get("sigma")
        return [
            PosteriorDraw(
                self.draws["b0"][i], self.draws["bCond"][i],
                self.draws["sdChildInt"][i], self.draws["sdChildSlope"][i],
                self.draws["corrChild"][i], self.draws["sdItemInt"][i],
                self.draws["sdItemSlope"][i], self.draws["corrItem"][i],
                None if sigma is None else sigma[i],
            )
            for i in range(n)
        ]

    def interval(self, name: str, mass: float = 0.95) -> tuple[float, float]:
        xs = self.draws[name]
        lo = (1.0 - mass) / 2.0
        return (float(np.quantile(xs, lo)), float(np.quantile(xs, 1.0 - lo)))

    def mean(self, name: str) -> float:
        return float(np.mean(self.draws[name]))

    def to_csv(self) -> str:
        names = list(self.params)
        lines = [",".join(names)]
        n = self.chains * self.kept
        for i in range(n):
            lines.append(",".join(repr(float(self.draws[p][i])) for p in names))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, response: str) -> "ModelFit":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        names = tuple(lines[0].split(","))
        cols: dict[str, list[float]] = {p: [] for p in names}
        for ln in lines[1:]:
            for p, v in zip(names, ln.split(",")):
                cols[p].append(float(v))
        draws = {p: np.asarray(v) for p, v in cols.items()}
        n = len(lines) - 1
        return cls(response, names, draws, 1, n, {p: float("nan") for p in names},
                   True, McmcConfig(chains=1, iterations=n + 1, warmup=1))


def split_rhat(chains: np.ndarray) -> float:
    """Split-chain potential scale reduction (chains x iterations)."""
    m, n = chains.shape
    half = n // 2
    if half < 2:
        return float("nan")
    splits = chains[:, :half * 2].reshape(m * 2, half)
    means = splits.mean(axis=1)
    variances = splits.var(axis=1, ddof=1)
    w = variances.mean()
    b = half * means.var(ddof=1)
    if w <= 0:
        return float("nan")
    var_plus = (half - 1) / half * w + b / half
    return float(math.sqrt(var_plus / w))


def _prepare(records: list[TrialRecord], response: str):
    test = [r for r in records if not r.spec.is_practice]
    if response == "times":
        rows = [r for r in test if not r.censored]
    else:
        rows = test
    if not rows:
        raise FitError("no usable trials")
    children = sorted({r.spec.child_id for r in rows})
    items = sorted({r.spec.phoneme for r in rows})
    if len(children) < 2 or len(items) < 2:
        raise FitError("need at least two children and two items")
    cix = {c: i for i, c in enumerate(children)}
    iix = {p: i for i, p in enumerate(items)}
    data = {
        "x": np.array([1.0 if r.spec.condition == "letter" else 0.0
                       for r in rows]),
        "child": np.array([cix[r.spec.child_id] for r in rows], dtype=np.intp),
        "item": np.array([iix[r.spec.phoneme] for r in rows], dtype=np.intp),
        "n_children": len(children),
        "n_items": len(items),
    }
    if response == "times":
        data["y"] = np.array([math.log(r.time_seconds) for r in rows])
    else:
        data["k"] = np.array([float(r.errors) for r in rows])
        data["censored"] = np.array([r.censored for r in rows])
    return data


class _Chain:
    """One chain's state: parameters, adapted step sizes, row cache."""

    def __init__(self, data, response, cfg, seed):
        self.data = data
        self.response = response
        self.cfg = cfg
        self.rng = np.random.default_rng(seed)
        C, I = data["n_children"], data["n_items"]
        self.theta = {
            "b0": 0.0, "bCond": 0.0,
            "sdChildInt": 0.5, "sdChildSlope": 0.5, "corrChild": 0.0,
            "sdItemInt": 0.5, "sdItemSlope": 0.5, "corrItem": 0.0,
        }
        if response == "times":
            self.theta["sigma"] = 1.0
        self.u0 = np.zeros(C)
        self.u1 = np.zeros(C)
        self.v0 = np.zeros(I)
        self.v1 = np.zeros(I)
        self.scalar_names = list(self.theta)
        self.steps = {name: 0.2 for name in self.scalar_names}
        self.vec_steps = {"u0": np.full(C, 0.3), "u1": np.full(C, 0.3),
                          "v0": np.full(I, 0.3), "v1": np.full(I, 0.3)}
        self.accepts = {name: 0 for name in self.scalar_names}
        self.vec_accepts = {k: np.zeros(len(v)) for k, v in self.vec_steps.items()}
        self.trans_names = ["b0:u0", "bCond:u1", "b0:v0", "bCond:v1"]
        self.trans_steps = {name: 0.2 for name in self.trans_names}
        self.trans_accepts = {name: 0 for name in self.trans_names}
        self.rescale_names = ["sdChildInt:u0", "sdChildSlope:u1",
                              "sdItemInt:v0", "sdItemSlope:v1"]
        self.rescale_steps = {name: 0.3 for name in self.rescale_names}
        self.rescale_accepts = {name: 0 for name in self.rescale_names}
        self.eta = self._full_eta()

    def _full_eta(self):
        d = self.data
        return (self.theta["b0"] + self.theta["bCond"] * d["x"]
                + self.u0[d["child"]] + self.u1[d["child"]] * d["x"]
                + self.v0[d["item"]] + self.v1[d["item"]] * d["x"])

    def _rows_loglik(self, eta):
        if not self.cfg.likelihood_on:
            return np.zeros(len(eta))
        if self.response == "times":
            return models.normal_rows(self.data["y"], eta, self.theta["sigma"])
        return models.geometric_rows(self.data["k"], self.data["censored"], eta)

    # -- scalar blocks ----------------------------------------------------

    def _update_fixed(self, name):
        d = self.data
        step = self.steps[name]
        delta = step * self.rng.standard_normal()
        old = self.theta[name]
        new = old + delta
        eta_new = self.eta + (delta if name == "b0" else delta * d["x"])
        ll_delta = float(self._rows_loglik(eta_new).sum()
                         - self._rows_loglik(self.eta).sum())
        prior_delta = models.fixed_prior(new) - models.fixed_prior(old)
        if math.log(self.rng.random()) < ll_delta + prior_delta:
            self.theta[name] = new
            self.eta = eta_new
            self.accepts[name] += 1

    def _re_prior_children(self, sd0=None, sd1=None, r=None):
        return models.bvn_logpdf(
            self.u0, self.u1,
            self.theta["sdChildInt"] if sd0 is None else sd0,
            self.theta["sdChildSlope"] if sd1 is None else sd1,
            self.theta["corrChild"] if r is None else r).sum()

    def _re_prior_items(self, sd0=None, sd1=None, r=None):
        return models.bvn_logpdf(
            self.v0, self.v1,
            self.theta["sdItemInt"] if sd0 is None else sd0,
            self.theta["sdItemSlope"] if sd1 is None else sd1,
            self.theta["corrItem"] if r is None else r).sum()

    def _update_scale(self, name, re_prior, which):
        step = self.steps[name]
        old = self.theta[name]
        new = abs(old + step * self.rng.standard_normal())  # reflect at 0
        if new == 0.0:
            new = 1e-12
        kwargs_old = {}
        kwargs_new = {which: new}
        logp_old = re_prior() + models.half_normal_prior(old)
        logp_new = re_prior(**kwargs_new) + models.half_normal_prior(new)
        if math.log(self.rng.random()) < logp_new - logp_old:
            self.theta[name] = new
            self.accepts[name] += 1

    def _update_corr(self, name, re_prior):
        step = self.steps[name]
        old = self.theta[name]
        new = old + step * self.rng.standard_normal()
        while not -1.0 < new < 1.0:  # reflect into the open interval
            if new >= 1.0:
                new = 2.0 - new
            elif new <= -1.0:
                new = -2.0 - new
            if new in (-1.0, 1.0):
                new = 0.0
        logp_old = re_prior() + models.lkj2_prior(old)
        logp_new = re_prior(r=new) + models.lkj2_prior(new)
        if math.log(self.rng.random()) < logp_new - logp_old:
            self.theta[name] = new
            self.accepts[name] += 1

    def _update_sigma(self):
        step = self.steps["sigma"]
        old = self.theta["sigma"]
        new = abs(old + step * self.rng.standard_normal())
        if new == 0.0:
            new = 1e-12
        if self.cfg.likelihood_on:
            ll_old = models.normal_rows(self.data["y"], self.eta, old).sum()
            ll_new = models.normal_rows(self.data["y"], self.eta, new).sum()
        else:
            ll_old = ll_new = 0.0
        logp = (ll_new + models.half_normal_prior(new)
                - ll_old - models.half_normal_prior(old))
        if math.log(self.rng.random()) < logp:
            self.theta["sigma"] = new
            self.accepts["sigma"] += 1

    # -- random-effect vector blocks ---------------------------------------

    def _update_effects(self, kind):
        """Parallel per-group proposals; conditionals factor across groups."""
        d = self.data
        slope = kind in ("u1", "v1")
        child = kind in ("u0", "u1")
        vec = getattr(self, kind)
        idx = d["child"] if child else d["item"]
        steps = self.vec_steps[kind]
        n = len(vec)
        delta = steps * self.rng.standard_normal(n)
        row_delta = delta[idx] * (d["x"] if slope else 1.0)
        eta_new = self.eta + row_delta
        rows_delta = self._rows_loglik(eta_new) - self._rows_loglik(self.eta)
        group_ll = np.bincount(idx, weights=rows_delta, minlength=n)
        if child:
            u0n = self.u0 + delta if kind == "u0" else self.u0
            u1n = self.u1 + delta if kind == "u1" else self.u1
            pr_new = models.bvn_logpdf(u0n, u1n, self.theta["sdChildInt"],
                                       self.theta["sdChildSlope"],
                                       self.theta["corrChild"])
            pr_old = models.bvn_logpdf(self.u0, self.u1,
                                       self.theta["sdChildInt"],
                                       self.theta["sdChildSlope"],
                                       self.theta["corrChild"])
        else:
            v0n = self.v0 + delta if kind == "v0" else self.v0
            v1n = self.v1 + delta if kind == "v1" else self.v1
            pr_new = models.bvn_logpdf(v0n, v1n, self.theta["sdItemInt"],
                                       self.theta["sdItemSlope"],
                                       self.theta["corrItem"])
            pr_old = models.bvn_logpdf(self.v0, self.v1,
                                       self.theta["sdItemInt"],
                                       self.theta["sdItemSlope"],
                                       self.theta["corrItem"])
        accept = np.log(self.rng.random(n)) < group_ll + pr_new - pr_old
        if accept.any():
            vec[accept] += delta[accept]
            keep = accept[idx]
            self.eta = np.where(keep, eta_new, self.eta)
        self.vec_accepts[kind] += accept

    def _update_translation(self, name):
        """Shift mass between a fixed effect and its random-effect vector.

        Leaves every eta unchanged (likelihood-invariant), so the move is
        judged on priors alone; it decouples the otherwise slow-mixing
        pair (intercept, mean of group intercepts).
        """
        fixed, vec_name = name.split(":")
        vec = getattr(self, vec_name)
        delta = self.trans_steps[name] * self.rng.standard_normal()
        new_fixed = self.theta[fixed] + delta
        new_vec = vec - delta
        if vec_name in ("u0", "u1"):
            other = self.u1 if vec_name == "u0" else self.u0
            pair = (new_vec, other) if vec_name == "u0" else (other, new_vec)
            pr_new = models.bvn_logpdf(pair[0], pair[1],
                                       self.theta["sdChildInt"],
                                       self.theta["sdChildSlope"],
                                       self.theta["corrChild"]).sum()
            pr_old = self._re_prior_children()
        else:
            other = self.v1 if vec_name == "v0" else self.v0
            pair = (new_vec, other) if vec_name == "v0" else (other, new_vec)
            pr_new = models.bvn_logpdf(pair[0], pair[1],
                                       self.theta["sdItemInt"],
                                       self.theta["sdItemSlope"],
                                       self.theta["corrItem"]).sum()
            pr_old = self._re_prior_items()
        logp = (pr_new + models.fixed_prior(new_fixed)
                - pr_old - models.fixed_prior(self.theta[fixed]))
        if math.log(self.rng.random()) < logp:
            self.theta[fixed] = new_fixed
            setattr(self, vec_name, new_vec)
            self.trans_accepts[name] += 1

    def _update_rescale(self, name):
        """Random walk on a scale's log, holding the standardized effects
        fixed (the whole vector stretches with the sd).  Equivalent to a
        symmetric move in the non-centered parameterization, so the
        funnel between a small sd and its shrunken vector mixes; the
        (1 + n) * delta term is the change-of-variables Jacobian.
        """
        sd_name, vec_name = name.split(":")
        d = self.data
        vec = getattr(self, vec_name)
        n = len(vec)
        delta = self.rescale_steps[name] * self.rng.standard_normal()
        c = math.exp(delta)
        old_sd = self.theta[sd_name]
        new_sd = old_sd * c
        new_vec = vec * c
        slope = vec_name in ("u1", "v1")
        child = vec_name in ("u0", "u1")
        idx = d["child"] if child else d["item"]
        row_delta = (new_vec - vec)[idx] * (d["x"] if slope else 1.0)
        eta_new = self.eta + row_delta
        ll_delta = float((self._rows_loglik(eta_new)
                          - self._rows_loglik(self.eta)).sum())
        if child:
            u0n = new_vec if vec_name == "u0" else self.u0
            u1n = new_vec if vec_name == "u1" else self.u1
            pr_new = models.bvn_logpdf(
                u0n, u1n,
                new_sd if sd_name == "sdChildInt" else self.theta["sdChildInt"],
                new_sd if sd_name == "sdChildSlope" else self.theta["sdChildSlope"],
                self.theta["corrChild"]).sum()
            pr_old = self._re_prior_children()
        else:
            v0n = new_vec if vec_name == "v0" else self.v0
            v1n = new_vec if vec_name == "v1" else self.v1
            pr_new = models.bvn_logpdf(
                v0n, v1n,
                new_sd if sd_name == "sdItemInt" else self.theta["sdItemInt"],
                new_sd if sd_name == "sdItemSlope" else self.theta["sdItemSlope"],
                self.theta["corrItem"]).sum()
            pr_old = self._re_prior_items()
        logp = (ll_delta + pr_new - pr_old
                + models.half_normal_prior(new_sd)
                - models.half_normal_prior(old_sd)
                + (1 + n) * delta)
        if math.log(self.rng.random()) < logp:
            self.theta[sd_name] = new_sd
            setattr(self, vec_name, new_vec)
            self.eta = eta_new
            self.rescale_accepts[name] += 1

    def _adapt(self, window):
        for name in self.scalar_names:
            rate = self.accepts[name] / window
            if rate < self.cfg.accept_low:
                self.steps[name] *= 0.8
            elif rate > self.cfg.accept_high:
                self.steps[name] *= 1.25
            self.accepts[name] = 0
        for kind, acc in self.vec_accepts.items():
            rate = acc / window
            s = self.vec_steps[kind]
            s[rate < self.cfg.accept_low] *= 0.8
            s[rate > self.cfg.accept_high] *= 1.25
            acc[:] = 0
        for name in self.trans_names:
            rate = self.trans_accepts[name] / window
            if rate < self.cfg.accept_low:
                self.trans_steps[name] *= 0.8
            elif rate > self.cfg.accept_high:
                self.trans_steps[name] *= 1.25
            self.trans_accepts[name] = 0
        for name in self.rescale_names:
            rate = self.rescale_accepts[name] / window
            if rate < self.cfg.accept_low:
                self.rescale_steps[name] *= 0.8
            elif rate > self.cfg.accept_high:
                self.rescale_steps[name] *= 1.25
            self.rescale_accepts[name] = 0

    def iterate(self, adapt: bool, iteration: int):
        self._update_fixed("b0")
        self._update_fixed("bCond")
        self._update_effects("u0")
        self._update_effects("u1")
        self._update_effects("v0")
        if self.cfg.item_slopes:
            self._update_effects("v1")
        self._update_translation("b0:u0")
        self._update_translation("bCond:u1")
        self._update_translation("b0:v0")
        if self.cfg.item_slopes:
            self._update_translation("bCond:v1")
        self._update_rescale("sdChildInt:u0")
        self._update_rescale("sdChildSlope:u1")
        self._update_rescale("sdItemInt:v0")
        if self.cfg.item_slopes:
            self._update_rescale("sdItemSlope:v1")
        self._update_scale("sdChildInt", self._re_prior_children, "sd0")
        self._update_scale("sdChildSlope", self._re_prior_children, "sd1")
        self._update_corr("corrChild", self._re_prior_children)
        self._update_scale("sdItemInt", self._re_prior_items, "sd0")
        self._update_scale("sdItemSlope", self._re_prior_items, "sd1")
        self._update_corr("corrItem", self._re_prior_items)
        if self.response == "times":
            self._update_sigma()
        if adapt and (iteration + 1) % self.cfg.adapt_interval == 0:
            self._adapt(self.cfg.adapt_interval)
        if (iteration + 1) % 500 == 0:
            self.eta = self._full_eta()  # shed float drift


def _fit(records, response, cfg: McmcConfig) -> ModelFit:
    data = _prepare(records, response)
    names = TIME_PARAMS if response == "times" else ERROR_PARAMS
    kept = cfg.iterations - cfg.warmup
    store = {p: np.empty((cfg.chains, kept)) for p in names}
    for chain_idx in range(cfg.chains):
        chain = _Chain(data, response, cfg, seed=cfg.seed * 10_000 + chain_idx)
        for it in range(cfg.iterations):
            chain.iterate(adapt=it < cfg.warmup, iteration=it)
            if it >= cfg.warmup:
                for p in names:
                    store[p][chain_idx, it - cfg.warmup] = chain.theta[p]
    rhat = {p: split_rhat(store[p]) for p in names}
    converged = all(r < RHAT_LIMIT for r in rhat.values() if not math.isnan(r))
    draws = {p: store[p].reshape(-1) for p in names}
    return ModelFit(response, tuple(names), draws, cfg.chains, kept, rhat,
                    converged, cfg)


def fit_time_model(records: list[TrialRecord],
                   cfg: McmcConfig | None = None) -> ModelFit:
    return _fit(records, "times", cfg or McmcConfig())


def fit_error_model(records: list[TrialRecord],
                    cfg: McmcConfig | None = None) -> ModelFit:
    return _fit(records, "errors", cfg or McmcConfig())
