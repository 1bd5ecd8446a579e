import numpy as np
import pytest

from phonoblocks import inventory
from phonoblocks.layout import (
    GridError,
    alphabetic_layout,
    compose_layout,
    connected_regions,
    mds_2d,
    phoneme_keyboard,
    similarity,
)
from phonoblocks.layout.mds import raw_stress
from phonoblocks.layout.similarity import SimilarityMatrix


def test_similarity_identical_vectors_zero():
    m = similarity(["P", "P"][:1] + ["B"])
    assert m.distance("P", "P") == 0.0


def test_similarity_voicing_flip_smaller_than_vowel_gap():
    m = similarity()
    assert m.distance("P", "B") < m.distance("P", "AA")


def test_similarity_symmetric_full_inventory():
    m = similarity()
    assert m.values.shape == (39, 39)
    assert np.array_equal(m.values, m.values.T)
    assert np.all(np.diag(m.values) == 0)


def test_similarity_matrix_validation():
    with pytest.raises(ValueError):
        SimilarityMatrix(("A", "B"), np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        SimilarityMatrix(("A", "B"), np.array([[0.0, -1.0], [-1.0, 0.0]]))


def _distance_matrix(points):
    p = np.asarray(points, dtype=float)
    return np.sqrt(((p[:, None, :] - p[None, :, :]) ** 2).sum(axis=2))


def test_classical_mds_recovers_planar_points():
    rng = np.random.default_rng(7)
    pts = rng.normal(size=(12, 2)) * 3
    delta = _distance_matrix(pts)
    m = SimilarityMatrix(tuple(f"s{i}" for i in range(12)), delta)
    res = mds_2d(m, method="classical")
    assert res.stress < 1e-9
    got = _distance_matrix(res.coords)
    np.testing.assert_allclose(got, delta, atol=1e-9)


def test_three_equidistant_points_form_equilateral_triangle():
    delta = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=float)
    res = mds_2d(SimilarityMatrix(("a", "b", "c"), delta), method="classical")
    d = _distance_matrix(res.coords)
    iu = np.triu_indices(3, k=1)
    np.testing.assert_allclose(d[iu], 1.0, atol=1e-9)


def test_degenerate_collinear_flagged():
    # three points on a line: centering matrix has rank 1
    pts = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]
    delta = _distance_matrix(pts)
    res = mds_2d(SimilarityMatrix(("a", "b", "c"), delta), method="classical")
    assert res.degenerate
    assert np.allclose(res.coords[:, 1], 0.0, atol=1e-9)


def test_smacof_stress_monotone_on_inventory():
    m = similarity()
    res = mds_2d(m, method="smacof", seed=3, max_iter=200, tol=1e-10)
    trace = res.stress_trace
    assert len(trace) > 2
    assert all(b - a <= 1e-9 for a, b in zip(trace, trace[1:]))


def test_mds_deterministic():
    m = similarity()
    a = mds_2d(m, method="smacof", seed=11)
    b = mds_2d(m, method="smacof", seed=11)
    np.testing.assert_array_equal(a.coords, b.coords)


def test_canonicalization_fixes_rigid_motion():
    rng = np.random.default_rng(5)
    pts = rng.normal(size=(10, 2))
    delta = _distance_matrix(pts)
    syms = tuple(f"s{i}" for i in range(10))
    res1 = mds_2d(SimilarityMatrix(syms, delta), method="classical")
    # rotating the input points must not change the canonical embedding
    theta = 1.1
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    delta2 = _distance_matrix(pts @ rot)
    res2 = mds_2d(SimilarityMatrix(syms, delta2), method="classical")
    np.testing.assert_allclose(res1.coords, res2.coords, atol=1e-8)


def test_compose_layout_places_everything_injectively():
    grid = phoneme_keyboard(rows=8, cols=6)
    assert len(grid.cells) == 39
    assert len(set(grid.cells.values())) == 39


def test_consonant_groups_connected():
    grid = phoneme_keyboard(rows=8, cols=6)
    for gid in (1, 2, 3):
        cells = [grid.cells[s] for s, g in grid.group_of.items() if g == gid]
        assert cells
        assert connected_regions(cells) == 1


def test_group_membership_matches_classes():
    grid = phoneme_keyboard()
    for sym, gid in grid.group_of.items():
        assert gid == inventory.get(sym).layout_group
    vowels = [s for s in grid.cells if inventory.get(s).is_vowel]
    assert len(vowels) == 15
    assert all(s not in grid.group_of for s in vowels)


def test_seed_sweep_invariants():
    m = similarity()
    for seed in range(20):
        res = mds_2d(m, method="smacof", seed=seed, max_iter=60)
        grid = compose_layout(res, rows=8, cols=6)
        assert len(set(grid.cells.values())) == 39
        for gid in (1, 2, 3):
            cells = [grid.cells[s] for s, g in grid.group_of.items() if g == gid]
            assert connected_regions(cells) == 1


def test_grid_too_small():
    res = mds_2d(similarity(), method="classical")
    with pytest.raises(GridError):
        compose_layout(res, rows=5, cols=6)


def test_single_phoneme_tiny_grid():
    res = mds_2d(similarity(["K"]), method="classical")
    grid = compose_layout(res, rows=1, cols=1)
    assert grid.cells == {"K": (0, 0)}


def test_alphabetic_letters():
    letters = [chr(ord("A") + i) for i in range(26)]
    grid = alphabetic_layout(letters, cols=7)
    assert grid.cells["A"] == (0, 0)
    assert grid.cells["H"] == (1, 0)
    assert grid.cells["G"] == (0, 6)


def test_alphabetic_creature_keys_same_geometry():
    letters = [chr(ord("A") + i) for i in range(26)]
    letter_grid = alphabetic_layout(letters, cols=7)
    creatures = [f"creature-{c}" for c in letters]
    keys = [(c, f"PH{c}") for c in letters]
    creature_grid = alphabetic_layout(creatures, cols=7, keys=keys)
    assert set(letter_grid.cells.values()) == set(creature_grid.cells.values())
    assert creature_grid.cells["creature-A"] == (0, 0)


def test_alphabetic_empty():
    grid = alphabetic_layout([], cols=7)
    assert grid.cells == {}
