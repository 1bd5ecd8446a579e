"""CMU-format pronouncing dictionary parser.

Accepts the classic line format ``WORD␣␣PH0 PH1 ...`` with ``;;;``
comment lines and ``(n)`` variant suffixes.  Stress digits are stripped
during ingestion; lines with malformed structure or out-of-inventory
phoneme symbols are collected into a report instead of raising.
"""

from __future__ import annotations

import gzip
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from phonoblocks import inventory

_VARIANT_RE = re.compile(r"^(.+)\((\d+)\)$")
_STRESS_RE = re.compile(r"^([A-Z]{1,2})[0-2]?$")


@dataclass(frozen=True)
class PronEntry:
    """One dictionary entry: a word, its variant number, its phonemes."""

    word: str
    variant: int
    phonemes: tuple[str, ...]

    def __post_init__(self):
        if not self.word:
            raise ValueError("entry word must be nonempty")
        if not self.phonemes:
            raise ValueError(f"{self.word}: phoneme sequence must be nonempty")
        if self.variant < 1:
            raise ValueError(f"{self.word}: variant must be >= 1")

    @property
    def is_primary(self) -> bool:
        return self.variant == 1


@dataclass
class ParseReport:
    """Per-line diagnostics collected while parsing."""

    n_lines: int = 0
    n_comments: int = 0
    n_entries: int = 0
    errors: list[tuple[int, str, str]] = field(default_factory=list)

    def add_error(self, lineno: int, line: str, reason: str) -> None:
        self.errors.append((lineno, line, reason))


def parse_dictionary(text: str, report: ParseReport | None = None) -> list[PronEntry]:
    """Parse dictionary content into entries.

    Malformed lines and entries with non-inventory phoneme symbols are
    recorded in the report (pass one in to inspect them) and skipped.
    """
    if report is None:
        report = ParseReport()
    entries: list[PronEntry] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        report.n_lines += 1
        line = raw.strip()
        if not line:
            continue
        if line.startswith(";;;"):
            report.n_comments += 1
            continue
        head, sep, pron = line.partition("  ")
        if not sep:
            # tolerate single-space separators seen in some redistributions
            head, sep, pron = line.partition(" ")
            if not sep or not pron.strip():
                report.add_error(lineno, raw, "no word/pronunciation separator")
                continue
        head = head.strip().upper()
        m = _VARIANT_RE.match(head)
        if m:
            word, variant = m.group(1), int(m.group(2))
        else:
            word, variant = head, 1
        if not word:
            report.add_error(lineno, raw, "empty word field")
            continue
        phonemes = []
        bad = None
        for tok in pron.split():
            sm = _STRESS_RE.match(tok)
            sym = sm.group(1) if sm else tok
            if not inventory.is_phoneme(sym):
                bad = tok
                break
            phonemes.append(sym)
        if bad is not None:
            report.add_error(lineno, raw, f"unknown phoneme symbol {bad!r}")
            continue
        if not phonemes:
            report.add_error(lineno, raw, "empty pronunciation")
            continue
        entries.append(PronEntry(word, variant, tuple(phonemes)))
        report.n_entries += 1
    return entries


def load_dictionary_file(path: str | Path, report: ParseReport | None = None) -> list[PronEntry]:
    """Load a dictionary from a plain or gzipped file."""
    path = Path(path)
    if path.suffix == ".gz":
        text = gzip.decompress(path.read_bytes()).decode("utf-8")
    else:
        text = path.read_text(encoding="utf-8", errors="replace")
    return parse_dictionary(text, report)


def load_bundled_dictionary(report: ParseReport | None = None) -> list[PronEntry]:
    """Load the CMU dictionary copy shipped with the package."""
    blob = resources.files("phonoblocks.data").joinpath("cmudict.dict.gz").read_bytes()
    text = gzip.decompress(blob).decode("utf-8")
    return parse_dictionary(text, report)
