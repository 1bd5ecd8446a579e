"""Phoneme dissimilarity from articulatory features.

The keyboard in the original design was arranged from neural-response
similarity data; that dataset is not redistributable, so this artifact
derives dissimilarities from the bundled articulatory feature vectors
(each feature scaled to unit range, Euclidean distance).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from phonoblocks import inventory


@dataclass(frozen=True)
class SimilarityMatrix:
    symbols: tuple[str, ...]
    values: np.ndarray  # (n, n) symmetric dissimilarities, zero diagonal

    def __post_init__(self):
        v = self.values
        if v.shape != (len(self.symbols), len(self.symbols)):
            raise ValueError("matrix shape does not match symbol count")
        if not np.allclose(v, v.T, atol=1e-12):
            raise ValueError("dissimilarities must be symmetric")
        if np.any(v < 0):
            raise ValueError("dissimilarities must be non-negative")
        if np.any(np.abs(np.diag(v)) > 0):
            raise ValueError("diagonal must be zero")

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    def distance(self, a: str, b: str) -> float:
        return float(self.values[self.index(a), self.index(b)])


def similarity(symbols: list[str] | None = None) -> SimilarityMatrix:
    """Dissimilarity matrix over the given phonemes (whole inventory by default)."""
    if symbols is None:
        symbols = list(inventory.SYMBOLS)
    feats = np.array([inventory.get(s).scaled_features() for s in symbols])
    diff = feats[:, None, :] - feats[None, :, :]
    values = np.sqrt((diff ** 2).sum(axis=2))
    np.fill_diagonal(values, 0.0)
    # exact symmetry despite float rounding
    values = (values + values.T) / 2.0
    return SimilarityMatrix(tuple(symbols), values)
