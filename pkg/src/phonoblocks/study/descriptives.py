"""Descriptive summaries of minigame records.

Per condition: total errors per child (censored trials contribute their
three failed attempts) and seconds per phoneme over uncensored trials.
Quartiles use the median-exclusive convention (the middle element of an
odd-length sample belongs to neither half).
"""

from __future__ import annotations

from dataclasses import dataclass

from phonoblocks.study.types import CONDITIONS, TrialRecord


def _median(xs: list[float]) -> float:
    n = len(xs)
    mid = n // 2
    if n % 2:
        return xs[mid]
    return (xs[mid - 1] + xs[mid]) / 2.0


def five_number(xs: list[float]) -> dict:
    """min/Q1/median/mean/Q3/max with median-exclusive quartiles."""
    if not xs:
        raise ValueError("empty sample")
    xs = sorted(xs)
    n = len(xs)
    lower = xs[: n // 2]
    upper = xs[(n + 1) // 2:]
    return {
        "min": xs[0],
        "q1": _median(lower) if lower else xs[0],
        "median": _median(xs),
        "mean": sum(xs) / n,
        "q3": _median(upper) if upper else xs[-1],
        "max": xs[-1],
    }


@dataclass(frozen=True)
class DescriptiveRow:
    label: str
    summary: dict | None  # None when no usable observations exist

    @property
    def empty(self) -> bool:
        return self.summary is None


def descriptives(records: list[TrialRecord]) -> list[DescriptiveRow]:
    if not records:
        raise ValueError("no records")
    test = [r for r in records if not r.spec.is_practice]
    rows = []
    for condition in CONDITIONS:
        per_child: dict[str, int] = {}
        for r in test:
            if r.spec.condition == condition:
                per_child[r.spec.child_id] = \
                    per_child.get(r.spec.child_id, 0) + r.errors
        label = f"Errors per child ({condition})"
        rows.append(DescriptiveRow(
            label, five_number(list(per_child.values())) if per_child else None))
    for condition in CONDITIONS:
        times = [r.time_seconds for r in test
                 if r.spec.condition == condition and not r.censored]
        label = f"Sec. per phoneme ({condition})"
        rows.append(DescriptiveRow(
            label, five_number(times) if times else None))
    return rows


def descriptives_text(rows: list[DescriptiveRow]) -> str:
    header = f"{'Measure':30s} {'Min':>7} {'Q1':>7} {'Median':>7} {'Mean':>7} {'Q3':>7} {'Max':>7}"
    lines = [header]
    for row in rows:
        if row.empty:
            lines.append(f"{row.label:30s} {'(no uncensored observations)':>47}")
            continue
        s = row.summary
        lines.append(
            f"{row.label:30s} {s['min']:7.2f} {s['q1']:7.2f} {s['median']:7.2f} "
            f"{s['mean']:7.2f} {s['q3']:7.2f} {s['max']:7.2f}")
    return "\n".join(lines)
