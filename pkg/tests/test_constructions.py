from __future__ import annotations

from itertools import combinations
from math import comb

import pytest

from ctdesign import constructions as cons
from ctdesign.errors import DesignError, GroupError
from ctdesign.johnson import points, popcount, subset


def test_example1_contains_y():
    d = cons.example1(6, 3, [0, 1])
    assert len(d) == 4
    assert all(b & subset([0, 1]) == subset([0, 1]) for b in d.blocks)


def test_example1_inside_y():
    d = cons.example1(7, 2, [0, 1, 2, 3])
    assert len(d) == 6
    assert all(b & ~subset([0, 1, 2, 3]) == 0 for b in d.blocks)


def test_example2():
    d = cons.example2(3, 3)
    assert [points(b) for b in d.blocks] == [(0, 1, 2), (3, 4, 5)]
    assert len(cons.example2(3, 2)) == 6


@pytest.mark.parametrize("b,k,n", [(3, 3, 8), (4, 4, 16), (4, 2, 24)])
def test_example3_counts(b, k, n):
    d = cons.example3(b, k)
    assert len(d) == n == comb(b, k) * 2**k
    pairs = cons.uniform_partition(2, b)
    assert all(max(popcount(blk & subset(P)) for P in pairs) == 1 for blk in d.blocks)


def test_example4_and_5_counts():
    assert len(cons.example4(3, 3)) == 27
    assert len(cons.example5(3, 2)) == 9
    assert len(cons.example5(2, 4)) == comb(4, 2) * 4


@pytest.mark.parametrize(
    "call",
    [
        lambda: cons.example1(5, 2, []),
        lambda: cons.example2(2, 3),
        lambda: cons.example3(2, 3),
        lambda: cons.example4(2, 3),
        lambda: cons.disjoint_blocks(7, 3),
        lambda: cons.pg_lines(6),
        lambda: cons.witt(21),
    ],
)
def test_bad_parameters(call):
    with pytest.raises(DesignError):
        call()


@pytest.mark.parametrize("q", [2, 3, 4])
def test_projective_planes(q):
    d, G = cons.pg_lines(q)
    n = q * q + q + 1
    assert (d.v, d.k, len(d)) == (n, q + 1, n)
    for a, b in combinations(d.blocks, 2):
        assert popcount(a & b) == 1
    assert G.preserves(d)
    assert G.order() == cons.pgl_order(3, q)


def test_ag24():
    d = cons.ag_lines(4)
    assert (d.v, d.k, len(d)) == (16, 4, 20)
    assert cons.is_t_design(d, 2, 1)


def test_biplane():
    d = cons.biplane11()
    assert (d.v, d.k, len(d)) == (11, 5, 11)
    assert all(popcount(a & b) == 2 for a, b in combinations(d.blocks, 2))
    assert cons.is_t_design(d, 2, 2)
    assert cons.bundled_group("l2_11").preserves(d)


def test_extended_biplane():
    d = cons.extended_biplane12()
    assert (d.v, d.k, len(d)) == (12, 6, 22)
    assert cons.is_t_design(d, 3, 2)


def test_inversive_plane():
    d = cons.inversive_plane4()
    assert (d.v, d.k, len(d)) == (17, 5, 68)
    assert cons.is_t_design(d, 3, 1)
    G = cons.bundled_group("pgaml2_16")
    assert G.preserves(d)
    assert cons.pgl2_group(16, semilinear=True).order() == 16320


def test_golay_code():
    words = cons.golay_code()
    assert len(words) == 4096
    weights = {popcount(w) for w in words if w}
    assert min(weights) == 8
    assert weights == {8, 12, 16, 24}
    assert sum(1 for w in words if popcount(w) == 8) == 759


@pytest.mark.parametrize(
    "n,v,k,blocks,t",
    [(24, 24, 8, 759, 5), (23, 23, 7, 253, 4), (22, 22, 6, 77, 3), (12, 12, 6, 132, 5)],
)
def test_witt_designs(n, v, k, blocks, t):
    d = cons.witt(n)
    assert (d.v, d.k, len(d)) == (v, k, blocks)
    assert cons.is_t_design(d, t, 1)


def test_design_file_round_trip(tmp_path):
    d = cons.biplane11()
    path = tmp_path / "bp.txt"
    cons.write_design(d, path, comment="test")
    e = cons.read_design(path)
    assert e.blocks == d.blocks and (e.v, e.k) == (d.v, d.k)
    assert e.name == d.name
    assert cons.design_digest(e) == cons.design_digest(d)


@pytest.mark.parametrize(
    "text",
    ["", "7 3\n0 1 2\n", "7 3 2\n0 1 2\n", "7 3 1\n0 1\n", "7 3 1\n0 1 9\n"],
)
def test_parse_design_errors(text):
    with pytest.raises(DesignError):
        cons.parse_design(text)


def test_unknown_bundled_group():
    with pytest.raises(GroupError):
        cons.bundled_group("monster")
