"""The 39-symbol phoneme inventory shared by every module.

Symbols are the stress-stripped ARPAbet codes of the CMU pronouncing
dictionary.  Each phoneme carries an IPA display string, a manner class,
and a small articulatory feature vector (voicing, place, manner, height,
backness, rounding) used for similarity computations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

FEATURE_NAMES = ("voicing", "place", "manner", "height", "backness", "rounding")
# ordinal range of each feature, used to scale dimensions to unit range
FEATURE_RANGES = (1.0, 6.0, 5.0, 3.0, 3.0, 1.0)

CONSONANT_CLASSES = ("plosive", "fricative", "affricate", "nasal", "approximant")

# keyboard grouping: fricatives+affricates / plosives / nasals+approximants
LAYOUT_GROUP_OF_CLASS = {
    "fricative": 1,
    "affricate": 1,
    "plosive": 2,
    "nasal": 3,
    "approximant": 3,
}


@dataclass(frozen=True)
class Phoneme:
    symbol: str
    ipa: str
    klass: str
    features: tuple[int, ...]

    @property
    def is_vowel(self) -> bool:
        return self.klass == "vowel"

    @property
    def layout_group(self) -> int | None:
        """Consonant keyboard group (1-3), None for vowels."""
        return LAYOUT_GROUP_OF_CLASS.get(self.klass)

    def scaled_features(self) -> tuple[float, ...]:
        return tuple(f / r for f, r in zip(self.features, FEATURE_RANGES))


def _load() -> dict[str, Phoneme]:
    raw = json.loads(
        resources.files("phonoblocks.data").joinpath("phonemes.json").read_text()
    )
    table = {}
    for row in raw:
        feats = tuple(row["features"][name] for name in FEATURE_NAMES)
        table[row["symbol"]] = Phoneme(row["symbol"], row["ipa"], row["klass"], feats)
    if len(table) != 39:
        raise RuntimeError(f"phoneme inventory must have 39 symbols, got {len(table)}")
    return table


INVENTORY: dict[str, Phoneme] = _load()
SYMBOLS: tuple[str, ...] = tuple(sorted(INVENTORY))
SYMBOL_INDEX: dict[str, int] = {s: i for i, s in enumerate(SYMBOLS)}

VOWELS = tuple(s for s in SYMBOLS if INVENTORY[s].is_vowel)
CONSONANTS = tuple(s for s in SYMBOLS if not INVENTORY[s].is_vowel)


def get(symbol: str) -> Phoneme:
    try:
        return INVENTORY[symbol]
    except KeyError:
        raise KeyError(f"not an inventory phoneme: {symbol!r}") from None


def is_phoneme(symbol: str) -> bool:
    return symbol in INVENTORY
