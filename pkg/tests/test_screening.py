from __future__ import annotations

from math import comb, factorial

import pytest

from ctdesign import screening as sc


def test_orbit_bound():
    assert not sc.orbit_bound_ok(65, 5, sc.suzuki_order(8))
    assert sc.orbit_bound_ok(24, 8, factorial(24))
    with pytest.raises(ValueError):
        sc.orbit_bound_ok(10, 1, 100)


def test_orbit_bound_monotone_in_order():
    v, k = 30, 7
    need = -(-comb(v, k) // (k - 1))
    assert sc.orbit_bound_ok(v, k, need)
    assert not sc.orbit_bound_ok(v, k, need - 1)


def test_divisibility():
    assert sc.divisibility_ok(16, 8, 8 * 8)
    assert not sc.divisibility_ok(16, 8, 32)
    # the block-count refinement divides out the orbit length: 16320/68 = 240 = 4*60
    assert sc.divisibility_ok(17, 5, 16320, blocks=68)
    assert not sc.divisibility_ok(17, 5, 16320, blocks=16320 // 30)
    assert sc.divisibility_lcm_ok(176, 11, sc.SPORADIC["HS"][2])
    assert not sc.divisibility_ok(176, 11, sc.SPORADIC["HS"][2])


@pytest.mark.parametrize("q", [8, 32, 128])
def test_suzuki_orders(q):
    assert sc.suzuki_order(q) >= q * q * (q * q + 1) * (q - 1)


def test_order_formulas():
    assert sc.l2_order(11) == 1320  # PGammaL(2,11) = PGL(2,11)
    assert sc.l2_order(16) == 16320
    assert sc.pgaml_order(3, 2) == 168
    assert sc.agaml_order(2, 4) == 16 * 180 * 2
    assert sc.gl_order(2, 3) == 48


def test_suzuki_eliminated():
    t = sc.screen_suzuki()
    assert t.survivors() == []
    assert all(r.failed == "quarter_bound" for r in t.rows)


def test_unitary():
    t = sc.screen_unitary()
    assert t.open_params("coarse_960a") == [(2, 1), (3, 1)]
    assert t.survivors() == []


def test_ree_eliminated():
    assert sc.screen_ree().survivors() == []


def test_l2():
    t = sc.screen_l2()
    assert [q for q, _ in t.open_params("coarse_480a")] == [13, 16, 17, 19, 23, 25, 27, 32]
    assert [q for q, _ in t.open_params("k5_divisibility")] == [16]
    opened = t.survivors()
    assert [(r.q, tuple(r.k_range)) for r in opened] == [(16, (5,))]


def test_projective():
    t = sc.screen_projective()
    assert sorted((d, q) for q, d in t.open_params("d2d1")) == sorted(
        [(3, 2), (3, 3), (3, 4), (3, 5), (3, 7), (3, 8), (3, 9), (4, 2), (4, 3), (5, 2), (6, 2), (7, 2)]
    )
    k1v1 = sorted((d, q) for q, d in t.open_params("k1v1"))
    assert k1v1 == [(3, 2), (3, 3), (3, 4), (3, 5), (4, 2), (5, 2)]


def test_affine():
    t = sc.screen_affine()
    assert sorted((d, q) for q, d in t.open_params("exact_order")) == [
        (2, 2), (2, 3), (2, 4), (3, 2), (4, 2), (5, 2)
    ]


def test_mathieu():
    assert sc.mathieu_k("i") == (5,)
    assert sc.mathieu_k("ii") == (6,)
    assert sc.mathieu_k("iii") == (6, 7, 8, 10)
    assert sc.mathieu_k("iv") == (5, 7, 8, 9, 11)
    assert sc.mathieu_k("v") == (6, 8, 9, 10, 12)


def test_hs_and_co3():
    assert sc.hs_candidates(predicate="product") == (8, 16)
    assert sc.hs_candidates(predicate="lcm") == (8, 11, 16)
    assert sc.orbit_bound_max_k(176, sc.SPORADIC["HS"][2]) == 4
    assert sc.co3_candidates() == (6,)


def test_family_dispatch():
    assert set(sc.FAMILIES) >= {"suzuki", "unitary", "ree", "L2", "projective", "affine", "sporadic"}
    assert sc.family_screen("suzuki").family
    with pytest.raises(KeyError):
        sc.family_screen("monster")


def test_table_serialisation():
    t = sc.screen_l2()
    csv_text = t.to_csv()
    assert csv_text.splitlines()[0].startswith("family,q,d,v")
    assert len(csv_text.splitlines()) == len(t.rows) + 1
    js = t.to_json()
    assert js["stages"] == list(t.stages)
    assert "open:" in t.to_text()
    with pytest.raises(KeyError):
        t.survivors("nonsense")


def test_audit_counts():
    assert sc.audit_counts("ag24_c2", 840).status == sc.PASS
    assert sc.audit_counts("inversive_c2", 2040).status == sc.MISMATCH
    assert sc.audit_counts("biplane_orbits", [55, 66, 330, 11]).status == sc.PASS
    assert sc.audit_counts("affine_display", None).status == sc.FLAG
    with pytest.raises(KeyError):
        sc.audit_counts("no_such_claim", 0)
