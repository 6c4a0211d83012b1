from __future__ import annotations

from math import comb

import pytest

from ctdesign.constructions import BUNDLED_GROUPS, bundled_group, biplane11, pg_lines, pgl_order
from ctdesign.errors import DesignError, GroupError, MemoryCapError
from ctdesign.johnson import Design, subset
from ctdesign.permgroup import (
    IMPRIMITIVE,
    INTRANSITIVE,
    TWO_TRANSITIVE,
    PermGroup,
    apply,
    classify_action,
    flag_orbit_check,
    from_cycles,
    identity,
    inverse,
    mul,
    orbits_on_ksubsets,
    read_group,
    symmetric_group,
    to_cycles,
    wreath_product,
    write_group,
    young_subgroup,
)

BUNDLED_ORDERS = {
    "l2_11": 660,
    "m11": 7920,
    "m11_12": 7920,
    "m12": 95040,
    "m22": 443520,
    "m23": 10200960,
    "m24": 244823040,
    "pgaml2_16": 16320,
    "pgl3_2": 168,
    "pgl3_3": 5616,
}


def test_apply_examples():
    assert apply(identity(5), subset([1, 3])) == subset([1, 3])
    assert apply((1, 0, 2), subset([0, 2])) == subset([1, 2])


def test_cycles_round_trip():
    g = from_cycles("(0 3 5)(1 2)", 7)
    assert g == (3, 2, 1, 5, 4, 0, 6)
    assert from_cycles(to_cycles(g), 7) == g
    assert mul(g, inverse(g)) == identity(7)


def test_bad_permutation():
    with pytest.raises(GroupError):
        PermGroup(3, [(0, 0, 1)])


def test_symmetric_orders():
    assert symmetric_group(4).order() == 24
    assert symmetric_group(7).order() == 5040
    assert young_subgroup(7, [0, 1, 2]).order() == 6 * 24
    assert wreath_product(2, 3).order() == 2**3 * 6
    assert wreath_product(4, 2).order() == 24**2 * 2


@pytest.mark.parametrize("name", sorted(BUNDLED_ORDERS))
def test_bundled_orders(name):
    assert name in BUNDLED_GROUPS
    assert bundled_group(name).order() == BUNDLED_ORDERS[name]


def test_m11_is_sharply_four_transitive():
    G = bundled_group("m11")
    assert G.order() == 11 * 10 * 9 * 8
    S = G
    for x in range(4):
        S = S.point_stabilizer(x)
    assert S.order() == 1


def test_pgl_orders_match_formula():
    assert pg_lines(2)[1].order() == pgl_order(3, 2) == 168
    assert pg_lines(3)[1].order() == pgl_order(3, 3) == 5616


def test_membership():
    G = bundled_group("pgl3_2")
    for g in G.generators:
        assert g in G
    assert (1, 0, 2, 3, 4, 5, 6) not in G  # a transposition is odd; PGL(3,2) is simple


def test_orbits_symmetric_is_homogeneous():
    orbs = orbits_on_ksubsets(symmetric_group(5), 2)
    assert orbs.sizes == [10]
    assert len(orbits_on_ksubsets(symmetric_group(7), 3)) == 1


def test_orbit_partition_is_a_partition():
    G = bundled_group("l2_11")
    orbs = orbits_on_ksubsets(G, 5)
    assert sum(orbs.sizes) == comb(11, 5)
    assert sorted(orbs.sizes) == [11, 55, 66, 330]
    for cell in orbs.cells:
        assert G.order() % cell.size == 0


@pytest.mark.slow
def test_mathieu_orbit_counts():
    assert len(orbits_on_ksubsets(bundled_group("m24"), 8)) == 3
    assert len(orbits_on_ksubsets(bundled_group("m23"), 7)) == 4


def test_orbit_cap():
    with pytest.raises(MemoryCapError):
        orbits_on_ksubsets(symmetric_group(30), 15, max_ranks=1000)
    with pytest.raises(DesignError):
        orbits_on_ksubsets(symmetric_group(5), 6)


def test_classify_action():
    c = classify_action(young_subgroup(7, [0, 1, 2]))
    assert c.label == INTRANSITIVE
    assert c.orbits == [[0, 1, 2], [3, 4, 5, 6]]
    c = classify_action(wreath_product(2, 3))
    assert c.label == IMPRIMITIVE
    assert all(len(b) == 2 for b in c.blocks) and len(c.blocks) == 3
    assert classify_action(bundled_group("l2_11")).label == TWO_TRANSITIVE
    assert classify_action(bundled_group("m24")).label == TWO_TRANSITIVE


def test_flag_orbit_check():
    d = Design.from_points(6, [[0, 1, 2]])
    assert flag_orbit_check(symmetric_group(6), d, d.blocks[0])
    bp = biplane11()
    assert flag_orbit_check(bundled_group("l2_11"), bp, bp.blocks[0])
    # the block stabilizer of a line in a Young subgroup setting is not transitive
    d2 = Design.from_points(6, [[0, 1, 2], [0, 3, 4]])
    assert not flag_orbit_check(PermGroup(6, [identity(6)]), d2, d2.blocks[0])
    with pytest.raises(DesignError):
        flag_orbit_check(symmetric_group(6), d, subset([3, 4, 5]))


def test_group_file_round_trip(tmp_path):
    G = bundled_group("l2_11")
    path = tmp_path / "g.txt"
    write_group(G, path, {"name": "L2(11)"})
    H = read_group(path)
    assert H.name == "L2(11)"
    assert H.v == 11 and H.generators == G.generators
    assert H.order() == 660


def test_restrict_requires_invariant_subset():
    G = young_subgroup(7, [0, 1, 2])
    assert G.restrict([0, 1, 2]).order() == 6
    with pytest.raises(GroupError):
        G.restrict([0, 1, 3])
