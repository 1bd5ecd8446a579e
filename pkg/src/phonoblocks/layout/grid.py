"""Snapping embeddings onto keyboard grids.

The phoneme keyboard divides the grid into four zones along a
boustrophedon (snake) path: vowels, then the three consonant groups
(fricatives+affricates / plosives / nasals+approximants).  Each zone is
a contiguous stretch of the snake path sized exactly to its group, so
every group region is 4-connected by construction.  Within a zone,
members are placed by greedy nearest-cell assignment in decreasing
isolation order, collisions going to the nearest free cell.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from phonoblocks import inventory
from phonoblocks.layout.mds import MDSResult

GROUP_NAMES = {1: "fricatives+affricates", 2: "plosives", 3: "nasals+approximants"}


class GridError(ValueError):
    pass


@dataclass
class LayoutGrid:
    rows: int
    cols: int
    cells: dict[str, tuple[int, int]]
    group_of: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for sym, cell in self.cells.items():
            r, c = cell
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise GridError(f"{sym} placed off-grid at {cell}")
            if cell in seen:
                raise GridError(f"cell {cell} assigned twice")
            seen.add(cell)

    def symbol_at(self, row: int, col: int) -> str | None:
        for sym, cell in self.cells.items():
            if cell == (row, col):
                return sym
        return None

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "cells": {s: [r, c] for s, (r, c) in self.cells.items()},
            "group_of": dict(self.group_of),
        }


def _snake_path(rows: int, cols: int) -> list[tuple[int, int]]:
    path = []
    for r in range(rows):
        rng = range(cols) if r % 2 == 0 else range(cols - 1, -1, -1)
        path.extend((r, c) for c in rng)
    return path


def connected_regions(cells: list[tuple[int, int]]) -> int:
    """Number of 4-connected components among the given cells."""
    todo = set(cells)
    regions = 0
    while todo:
        regions += 1
        queue = deque([todo.pop()])
        while queue:
            r, c = queue.popleft()
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in todo:
                    todo.remove(nb)
                    queue.append(nb)
    return regions


def _zone_assign(members: list[str], coords: dict[str, tuple[float, float]],
                 zone_cells: list[tuple[int, int]]) -> dict[str, tuple[int, int]]:
    """Greedy nearest-cell snapping inside one zone.

    The zone's cells are fixed; member coordinates are rescaled onto the
    zone's bounding box, then assigned most-isolated first, each taking
    the nearest free cell (ties by row, then column).
    """
    if not members:
        return {}
    pts = np.array([coords[m] for m in members], dtype=float)
    cell_arr = np.array(zone_cells, dtype=float)  # (row, col)
    targets = np.zeros_like(pts)  # (row, col) targets
    # x -> col
    xlo, xhi = pts[:, 0].min(), pts[:, 0].max()
    clo, chi = cell_arr[:, 1].min(), cell_arr[:, 1].max()
    if xhi - xlo < 1e-12:
        targets[:, 1] = (clo + chi) / 2.0
    else:
        targets[:, 1] = clo + (pts[:, 0] - xlo) / (xhi - xlo) * (chi - clo)
    # y -> row, inverted because y grows up while rows grow down
    ylo, yhi = pts[:, 1].min(), pts[:, 1].max()
    rlo, rhi = cell_arr[:, 0].min(), cell_arr[:, 0].max()
    if yhi - ylo < 1e-12:
        targets[:, 0] = (rlo + rhi) / 2.0
    else:
        targets[:, 0] = rlo + (yhi - pts[:, 1]) / (yhi - ylo) * (rhi - rlo)

    # isolation: distance to the nearest other member, most isolated first
    order = list(range(len(members)))
    if len(members) > 1:
        d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2))
        np.fill_diagonal(d, np.inf)
        iso = d.min(axis=1)
        order.sort(key=lambda i: (-iso[i], members[i]))
    free = list(zone_cells)
    placed = {}
    for i in order:
        tr, tc = targets[i]
        best = min(free, key=lambda cell: ((cell[0] - tr) ** 2 + (cell[1] - tc) ** 2,
                                           cell[0], cell[1]))
        free.remove(best)
        placed[members[i]] = best
    return placed


def compose_layout(mds: MDSResult, rows: int = 8, cols: int = 6) -> LayoutGrid:
    """Build the phoneme keyboard grid from embedded coordinates."""
    symbols = list(mds.symbols)
    if len(symbols) > rows * cols:
        raise GridError(f"grid {rows}x{cols} too small for {len(symbols)} symbols")
    coords = {s: mds.coord_of(s) for s in symbols}
    vowels = [s for s in symbols if inventory.get(s).is_vowel]
    groups: dict[int, list[str]] = {1: [], 2: [], 3: []}
    for s in symbols:
        g = inventory.get(s).layout_group
        if g is not None:
            groups[g].append(s)

    path = _snake_path(rows, cols)
    zones = [vowels, groups[1], groups[2], groups[3]]
    cells: dict[str, tuple[int, int]] = {}
    group_of: dict[str, int] = {}
    offset = 0
    for zone_idx, members in enumerate(zones):
        zone_cells = path[offset:offset + len(members)]
        offset += len(members)
        cells.update(_zone_assign(members, coords, zone_cells))
        if zone_idx > 0:
            for m in members:
                group_of[m] = zone_idx
    return LayoutGrid(rows, cols, cells, group_of)


def phoneme_keyboard(rows: int = 8, cols: int = 6, method: str = "classical",
                     seed: int = 0) -> LayoutGrid:
    """Convenience: similarity -> MDS -> grid for the full inventory."""
    from phonoblocks.layout.mds import mds_2d
    from phonoblocks.layout.similarity import similarity

    return compose_layout(mds_2d(similarity(), method=method, seed=seed),
                          rows=rows, cols=cols)


def alphabetic_layout(symbols: list[str], cols: int = 7,
                      keys: list | None = None) -> LayoutGrid:
    """Row-major fill in key order (the minigame keyboard geometry).

    Keys default to the symbols themselves (A-Z order); creature
    keyboards pass (canonical grapheme, phoneme) keys.
    """
    if keys is None:
        keys = list(symbols)
    if len(keys) != len(symbols):
        raise GridError("one key per symbol required")
    order = sorted(range(len(symbols)), key=lambda i: keys[i])
    cells = {}
    for slot, i in enumerate(order):
        cells[symbols[i]] = (slot // cols, slot % cols)
    rows = (len(symbols) + cols - 1) // cols if symbols else 0
    return LayoutGrid(max(rows, 1) if symbols else 0, cols if symbols else 0, cells)
