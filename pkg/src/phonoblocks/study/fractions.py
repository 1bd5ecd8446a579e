"""Virtual-population preference fractions.

For each posterior draw, a synthetic population of child condition
effects d ~ Normal(bCond, sdChildSlope^2) is sampled; exp(d) is the
child's letter:creature ratio on the model scale (expected errors, or
median time).  A child is a letter-lover at threshold t when
exp(d) <= 1/t and a creature-lover when exp(d) >= t; at t = 1 the two
fractions partition the population, at larger t a no-preference band
sits between them.  Fractions are averaged across draws with 90%
central intervals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from phonoblocks.study.sampler import McmcConfig, ModelFit

DEFAULT_THRESHOLDS = (1.0, 1.25, 1.5, 2.0)


def _row_label(threshold: float, response: str) -> str:
    noun = "less err." if response == "errors" else "faster"
    if threshold == 1.0:
        return "less errors" if response == "errors" else "faster"
    t = f"{threshold:g}"
    return f">{t}x {noun}"


@dataclass(frozen=True)
class FractionRow:
    threshold: float
    label: str
    creature: tuple[float, float, float]  # low90, expectation, high90 (percent)
    letter: tuple[float, float, float]

    def __post_init__(self):
        for side in (self.creature, self.letter):
            lo, mid, hi = side
            if not (lo <= mid + 1e-9 and mid <= hi + 1e-9):
                raise ValueError("interval must bracket the expectation")


@dataclass(frozen=True)
class FractionTable:
    response: str
    rows: tuple[FractionRow, ...]

    def row(self, threshold: float) -> FractionRow:
        return next(r for r in self.rows if r.threshold == threshold)

    def to_json(self) -> dict:
        return {
            "response": self.response,
            "rows": [
                {"threshold": r.threshold, "label": r.label,
                 "creature_lovers": {"low90": r.creature[0],
                                     "expectation": r.creature[1],
                                     "high90": r.creature[2]},
                 "letter_lovers": {"low90": r.letter[0],
                                   "expectation": r.letter[1],
                                   "high90": r.letter[2]}}
                for r in self.rows
            ],
        }

    def to_text(self) -> str:
        head1 = f"{'':18s} {'% of creature-lovers':^26s}   {'% of letter-lovers':^26s}"
        head2 = (f"{'':18s} {'Low-90%':>8s} {'Expect':>8s} {'High-90%':>8s}   "
                 f"{'Low-90%':>8s} {'Expect':>8s} {'High-90%':>8s}")
        lines = [head1, head2]
        for r in self.rows:
            lines.append(
                f"{r.label:18s} {r.creature[0]:7.1f}% {r.creature[1]:7.1f}% "
                f"{r.creature[2]:7.1f}%   {r.letter[0]:7.1f}% {r.letter[1]:7.1f}% "
                f"{r.letter[2]:7.1f}%")
        return "\n".join(lines)


def point_mass_fit(b_cond: float, sd_child_slope: float,
                   response: str) -> ModelFit:
    """A single-draw fit, for closed-form consistency checks."""
    names = ("b0", "bCond", "sdChildInt", "sdChildSlope", "corrChild",
             "sdItemInt", "sdItemSlope", "corrItem")
    draws = {p: np.zeros(1) for p in names}
    draws["bCond"][0] = b_cond
    draws["sdChildSlope"][0] = sd_child_slope
    return ModelFit(response, names, draws, 1, 1,
                    {p: 1.0 for p in names}, True,
                    McmcConfig(chains=1, iterations=2, warmup=1))


def virtual_population(fit: ModelFit, thresholds=DEFAULT_THRESHOLDS,
                       M: int = 100_000, seed: int = 0,
                       max_draws: int | None = None) -> FractionTable:
    if M < 1000:
        raise ValueError("M must be at least 1000")
    if not fit.converged:
        raise ValueError("refusing to summarize a non-converged fit")
    rng = np.random.default_rng(seed)
    b = fit.draws["bCond"]
    s = fit.draws["sdChildSlope"]
    n_draws = len(b)
    if max_draws is not None and n_draws > max_draws:
        idx = np.linspace(0, n_draws - 1, max_draws).astype(int)
        b, s = b[idx], s[idx]
        n_draws = max_draws
    log_t = np.log(np.asarray(thresholds, dtype=float))
    creature = np.empty((n_draws, len(log_t)))
    letter = np.empty((n_draws, len(log_t)))
    for i in range(n_draws):
        d = rng.normal(b[i], s[i], size=M)
        for j, lt in enumerate(log_t):
            creature[i, j] = np.mean(d >= lt)
            letter[i, j] = np.mean(d <= -lt)
    rows = []
    for j, t in enumerate(thresholds):
        rows.append(FractionRow(
            float(t), _row_label(float(t), fit.response),
            (float(np.quantile(creature[:, j], 0.05)) * 100.0,
             float(creature[:, j].mean()) * 100.0,
             float(np.quantile(creature[:, j], 0.95)) * 100.0),
            (float(np.quantile(letter[:, j], 0.05)) * 100.0,
             float(letter[:, j].mean()) * 100.0,
             float(np.quantile(letter[:, j], 0.95)) * 100.0),
        ))
    return FractionTable(fit.response, tuple(rows))
