"""2D embeddings of a dissimilarity matrix: classical MDS and SMACOF.

Output is canonicalized (centered, first principal axis on +x, both
reflections pinned by the first symbols with off-axis coordinates) so
embeddings are comparable across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from phonoblocks.layout.similarity import SimilarityMatrix


@dataclass
class MDSResult:
    symbols: tuple[str, ...]
    coords: np.ndarray  # (n, 2)
    method: str
    stress: float
    stress_trace: list[float] = field(default_factory=list)
    degenerate: bool = False

    def coord_of(self, symbol: str) -> tuple[float, float]:
        i = self.symbols.index(symbol)
        return float(self.coords[i, 0]), float(self.coords[i, 1])


def raw_stress(coords: np.ndarray, delta: np.ndarray) -> float:
    d = np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(axis=2))
    iu = np.triu_indices(len(coords), k=1)
    return float(((d[iu] - delta[iu]) ** 2).sum())


def canonicalize(coords: np.ndarray) -> np.ndarray:
    """Center, rotate the principal axis onto x, pin both reflections."""
    x = coords - coords.mean(axis=0, keepdims=True)
    cov = x.T @ x
    evals, evecs = np.linalg.eigh(cov)
    order = np.argsort(evals)[::-1]
    x = x @ evecs[:, order]
    for axis in (0, 1):
        col = x[:, axis]
        nz = np.nonzero(np.abs(col) > 1e-9)[0]
        if len(nz) and col[nz[0]] < 0:
            x[:, axis] = -col
    return x


def _classical(delta: np.ndarray) -> tuple[np.ndarray, bool]:
    n = len(delta)
    j = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * j @ (delta ** 2) @ j
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    coords = np.zeros((n, 2))
    degenerate = False
    for axis in range(2):
        if axis < len(evals) and evals[axis] > 1e-12:
            coords[:, axis] = evecs[:, axis] * np.sqrt(evals[axis])
        else:
            degenerate = True
    return coords, degenerate


def _smacof(delta: np.ndarray, max_iter: int, tol: float, seed: int,
            trace: list[float]) -> np.ndarray:
    n = len(delta)
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0, 1.0, size=(n, 2)) * max(delta.max(), 1.0)
    prev = raw_stress(x, delta)
    trace.append(prev)
    for _ in range(max_iter):
        d = np.sqrt(((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(d > 1e-12, delta / np.where(d > 1e-12, d, 1.0), 0.0)
        b = -ratio
        np.fill_diagonal(b, 0.0)
        np.fill_diagonal(b, -b.sum(axis=1))
        x = (b @ x) / n
        cur = raw_stress(x, delta)
        trace.append(cur)
        if prev - cur < tol:
            break
        prev = cur
    return x


def mds_2d(matrix: SimilarityMatrix, method: str = "classical",
           max_iter: int = 300, tol: float = 1e-9, seed: int = 0) -> MDSResult:
    """Embed a dissimilarity matrix in the plane.

    classical: top-2 eigenpairs of the double-centered squared-distance
    matrix; a centering rank below 2 yields a collinear layout flagged
    as degenerate.  smacof: stress majorization from a seeded start,
    stopping when the stress improvement falls below tol.
    """
    delta = matrix.values
    trace: list[float] = []
    if method == "classical":
        coords, degenerate = _classical(delta)
    elif method == "smacof":
        coords = _smacof(delta, max_iter, tol, seed, trace)
        degenerate = False
    else:
        raise ValueError(f"unknown MDS method {method!r}")
    coords = canonicalize(coords)
    return MDSResult(matrix.symbols, coords, method, raw_stress(coords, delta),
                     trace, degenerate)
