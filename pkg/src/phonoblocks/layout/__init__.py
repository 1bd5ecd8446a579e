"""Phoneme keyboard construction: similarity space, 2D scaling, and grids."""

from phonoblocks.layout.similarity import SimilarityMatrix, similarity
from phonoblocks.layout.mds import MDSResult, mds_2d
from phonoblocks.layout.grid import (
    GridError,
    LayoutGrid,
    alphabetic_layout,
    compose_layout,
    connected_regions,
    phoneme_keyboard,
)

__all__ = [
    "GridError",
    "LayoutGrid",
    "MDSResult",
    "SimilarityMatrix",
    "alphabetic_layout",
    "compose_layout",
    "connected_regions",
    "mds_2d",
    "phoneme_keyboard",
    "similarity",
]
