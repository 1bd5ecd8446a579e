"""Pronouncing-dictionary ingestion, phoneme-grapheme alignment, pair
tables, and the sound-creature registry."""

from phonoblocks.lexicon.parser import (
    ParseReport,
    PronEntry,
    load_bundled_dictionary,
    parse_dictionary,
)
from phonoblocks.lexicon.alignment import (
    AlignedEntry,
    AlignmentError,
    AlignmentModel,
    align,
    train_alignment,
)
from phonoblocks.lexicon.pairs import PairStat, pair_table, top_pairs
from phonoblocks.lexicon.creatures import CreatureSpec, creature_registry
from phonoblocks.lexicon.lexicon import Lexicon, load_word_frequencies

__all__ = [
    "AlignedEntry",
    "AlignmentError",
    "AlignmentModel",
    "CreatureSpec",
    "Lexicon",
    "PairStat",
    "ParseReport",
    "PronEntry",
    "align",
    "creature_registry",
    "load_bundled_dictionary",
    "load_word_frequencies",
    "pair_table",
    "parse_dictionary",
    "top_pairs",
    "train_alignment",
]
