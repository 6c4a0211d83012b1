"""Randomised invariants over small Johnson graphs, designs and groups."""
from __future__ import annotations

from math import comb

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from ctdesign import analysis as an
from ctdesign import kernels
from ctdesign import screening as sc
from ctdesign.johnson import (
    Design,
    complement_map,
    distance,
    neighbors,
    popcount,
    rank,
    subset,
    unrank,
)
from ctdesign.permgroup import (
    TWO_TRANSITIVE,
    PermGroup,
    apply,
    classify_action,
    mul,
    orbits_on_ksubsets,
    ordered_pair_orbits,
)

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def vk_subset(draw, max_v=64):
    v = draw(st.integers(1, max_v))
    k = draw(st.integers(0, v))
    pts = draw(st.lists(st.integers(0, v - 1), min_size=k, max_size=k, unique=True))
    return v, k, subset(pts)


@st.composite
def small_design(draw, max_v=9):
    v = draw(st.integers(3, max_v))
    k = draw(st.integers(1, v - 1))
    n = comb(v, k)
    ranks = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=min(n - 1, 12)))
    return Design(v, k, tuple(unrank(r, v, k) for r in ranks))


@st.composite
def small_group(draw, max_v=8):
    v = draw(st.integers(3, max_v))
    gens = draw(st.lists(st.permutations(list(range(v))), min_size=1, max_size=3))
    return PermGroup(v, [tuple(g) for g in gens])


@SETTINGS
@given(vk_subset())
def test_rank_unrank_round_trip(t):
    v, k, s = t
    i = rank(s, v, k)
    assert 0 <= i < comb(v, k)
    assert unrank(i, v, k) == s


def test_rank_bijection_exhaustive():
    for v in range(1, 21):
        for k in range(0, v + 1):
            n = comb(v, k)
            if n > 10**5:
                continue
            masks = kernels.impl.unrank_all(v, k)
            assert len(set(masks.tolist())) == n
            assert np.all(np.bitwise_count(masks) == k)
            assert np.array_equal(kernels.impl.rank_masks(masks, v, k), np.arange(n))


@SETTINGS
@given(st.integers(2, 9).flatmap(lambda v: st.tuples(st.just(v), st.integers(1, v - 1))), st.data())
def test_distance_formula_and_bfs(vk, data):
    v, k = vk
    n = comb(v, k)
    a = unrank(data.draw(st.integers(0, n - 1)), v, k)
    b = unrank(data.draw(st.integers(0, n - 1)), v, k)
    assert distance(a, b) == k - popcount(a & b) == distance(b, a)
    dist = kernels.impl.bfs_distances(v, k, np.array([rank(a, v, k)], dtype=np.int64))
    assert int(dist[rank(b, v, k)]) == distance(a, b)


@SETTINGS
@given(st.integers(2, 12).flatmap(lambda v: st.tuples(st.just(v), st.integers(1, v - 1))), st.data())
def test_neighbors_and_complement(vk, data):
    v, k = vk
    n = comb(v, k)
    a = unrank(data.draw(st.integers(0, n - 1)), v, k)
    b = unrank(data.draw(st.integers(0, n - 1)), v, k)
    nb = neighbors(a, v)
    assert len(set(nb)) == len(nb) == k * (v - k)
    assert all(distance(a, c) == 1 for c in nb)
    full = (1 << v) - 1
    assert distance(full ^ a, full ^ b) == distance(a, b)


@SETTINGS
@given(small_design())
def test_partition_levels(d):
    part = an.distance_partition(d)
    assert sorted(part.cells[0].tolist()) == sorted(d.ranks())
    assert sum(part.sizes) == comb(d.v, d.k)
    masks = kernels.impl.unrank_all(d.v, d.k)
    for r_idx in range(0, comb(d.v, d.k), max(1, comb(d.v, d.k) // 25)):
        i = int(part.dist[r_idx])
        near = [int(part.dist[rank(m, d.v, d.k)]) for m in neighbors(int(masks[r_idx]), d.v)]
        assert all(abs(j - i) <= 1 for j in near)
        if i >= 1:
            assert i - 1 in near


@SETTINGS
@given(small_design())
def test_equitable_numbers_are_exact(d):
    verdict = an.is_completely_regular(d)
    part = an.distance_partition(d)
    masks = kernels.impl.unrank_all(d.v, d.k)
    if verdict.equitable and not verdict.trivial:
        for r_idx in range(comb(d.v, d.k)):
            i = int(part.dist[r_idx])
            counts = [0] * (part.r + 1)
            for m in neighbors(int(masks[r_idx]), d.v):
                counts[int(part.dist[rank(m, d.v, d.k)])] += 1
            assert counts == verdict.intersection_numbers[i]
    elif not verdict.equitable:
        w = verdict.witness
        assert part.distance_of(subset(w["vertex"])) == part.distance_of(subset(w["reference"]))
        assert w["count"] != w["reference_count"]


@SETTINGS
@given(small_design())
def test_opposite_of_regular_is_regular(d):
    part = an.distance_partition(d)
    assume(an.is_completely_regular(d, part).equitable)
    opp = an.opposite(d, part)
    assert an.is_completely_regular(opp).equitable
    # seen from the opposite design the partition is the original one reversed
    back = an.distance_partition(opp)
    assert back.r == part.r
    assert np.array_equal(back.dist, part.r - part.dist)
    assert an.opposite(opp).blocks == d.blocks


@SETTINGS
@given(small_design())
def test_opposite_has_same_strength(d):
    assert an.strength(an.opposite(d)) == an.strength(d)


def test_converse_needs_regularity():
    # {01, 02} in J(5,2) is not completely regular, but its farthest cell {34}
    # is a single block, which always is; the opposite of {34} is not {01, 02}
    d = Design.from_points(5, [[0, 1], [0, 2]])
    opp = an.opposite(d)
    assert not an.is_completely_regular(d).equitable
    assert an.is_completely_regular(opp).equitable
    assert an.opposite(opp).blocks != d.blocks


@SETTINGS
@given(small_design())
def test_complement_duality(d):
    c = complement_map(d)
    assert an.min_distance(c) == an.min_distance(d)
    assert an.covering_radius(c) == an.covering_radius(d)
    assert an.strength(c) == an.strength(d)
    assert an.is_completely_regular(c).equitable == an.is_completely_regular(d).equitable


@SETTINGS
@given(small_design())
def test_basic_report_bounds(d):
    delta = an.min_distance(d)
    assert delta >= 1
    assert 0 <= an.strength(d) <= d.k
    assert an.covering_radius(d) >= 0


@SETTINGS
@given(small_group(), st.data())
def test_orbit_cells_closed_and_sized(G, data):
    k = data.draw(st.integers(1, G.v - 1))
    orbs = orbits_on_ksubsets(G, k)
    assert sum(orbs.sizes) == comb(G.v, k)
    order = G.order()
    for cell in orbs.cells:
        assert order % cell.size == 0
        members = {unrank(int(r), G.v, k) for r in cell}
        for g in G.generators:
            assert {apply(g, m) for m in members} == members


@SETTINGS
@given(small_group())
def test_redundant_generators_keep_order(G):
    extra = mul(G.generators[0], G.generators[-1])
    H = PermGroup(G.v, list(G.generators) + [extra])
    assert H.order() == G.order()


@SETTINGS
@given(small_group())
def test_two_transitive_iff_one_pair_orbit(G):
    assert (classify_action(G).label == TWO_TRANSITIVE) == (ordered_pair_orbits(G) == 1)


@SETTINGS
@given(small_group(max_v=7), st.data())
def test_transitive_implies_regular(G, data):
    k = data.draw(st.integers(1, G.v - 1))
    orbs = orbits_on_ksubsets(G, k)
    cell = orbs.cells[data.draw(st.integers(0, len(orbs) - 1))]
    d = Design(G.v, k, tuple(unrank(int(r), G.v, k) for r in cell))
    if an.is_completely_transitive(d, G).completely_transitive:
        assert an.is_completely_regular(d).equitable


@SETTINGS
@given(st.integers(10, 200), st.integers(2, 9), st.integers(1, 10**12), st.integers(1, 10**6))
def test_orbit_bound_monotone(v, k, order, extra):
    assume(k < v)
    if sc.orbit_bound_ok(v, k, order):
        assert sc.orbit_bound_ok(v, k, order + extra)


@SETTINGS
@given(st.integers(6, 300), st.integers(1, 10**15))
def test_divisibility_readings_nest(v, order):
    for k in range(5, min(v // 2, 20) + 1):
        if sc.divisibility_ok(v, k, order):
            assert sc.divisibility_lcm_ok(v, k, order)
        if sc.point_stabilizer_divisibility_ok(v, k, order):
            assert sc.divisibility_ok(v, k, order)
