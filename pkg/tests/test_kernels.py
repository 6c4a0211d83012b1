"""The compiled and numpy kernels must agree exactly."""
from __future__ import annotations

from math import comb

import numpy as np
import pytest

from ctdesign import _pykernels, kernels
from ctdesign.constructions import bundled_group, pg_lines
from ctdesign.johnson import rank, unrank

needs_c = pytest.mark.skipif("cython" not in kernels.available(), reason="extension not built")


def test_backend_switch(backend):
    assert kernels.BACKEND == backend
    assert kernels.impl is kernels.get_backend(backend)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_unrank_all_matches_scalar(backend):
    masks = kernels.impl.unrank_all(10, 4)
    assert masks.shape == (comb(10, 4),)
    assert [int(m) for m in masks[:50]] == [unrank(i, 10, 4) for i in range(50)]
    ranks = kernels.impl.rank_masks(masks, 10, 4)
    assert np.array_equal(ranks, np.arange(comb(10, 4)))


def test_rank_masks_matches_scalar(backend):
    rng = np.random.default_rng(7)
    idx = rng.integers(0, comb(20, 6), size=200)
    masks = np.array([unrank(int(i), 20, 6) for i in idx], dtype=np.uint64)
    out = kernels.impl.rank_masks(masks, 20, 6)
    assert [int(x) for x in out] == [rank(int(m), 20, 6) for m in masks]


def _fano():
    d, G = pg_lines(2)
    return d, G


@needs_c
def test_bfs_agrees():
    d, _ = pg_lines(3)
    seeds = np.array(d.ranks(), dtype=np.int64)
    a = kernels.get_backend("cython").bfs_distances(13, 4, seeds)
    b = _pykernels.bfs_distances(13, 4, seeds)
    assert np.array_equal(a, b)


@needs_c
def test_orbit_labels_agree():
    G = bundled_group("l2_11")
    a, na = kernels.get_backend("cython").orbit_labels(11, 5, G.gen_array())
    b, nb = _pykernels.orbit_labels(11, 5, G.gen_array())
    assert na == nb == 4
    # same partition, possibly different label names
    pairs = set(zip(a.tolist(), b.tolist()))
    assert len(pairs) == na


@needs_c
def test_neighbor_profile_agrees():
    d, _ = _fano()
    dist = _pykernels.bfs_distances(7, 3, np.array(d.ranks(), dtype=np.int64)).astype(np.int32)
    ca = kernels.get_backend("cython").neighbor_profile(7, 3, dist, int(dist.max()) + 1)
    pa = _pykernels.neighbor_profile(7, 3, dist, int(dist.max()) + 1)
    assert np.array_equal(ca[0], pa[0])
    assert ca[1] == pa[1] is None


@needs_c
def test_apply_masks_agree():
    G = bundled_group("pgl3_3")
    masks = kernels.impl.unrank_all(13, 4)
    perm = np.array(G.generators[0], dtype=np.int64)
    assert np.array_equal(kernels.get_backend("cython").apply_masks(masks, perm),
                          _pykernels.apply_masks(masks, perm))
