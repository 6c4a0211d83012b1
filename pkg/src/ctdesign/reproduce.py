"""Recompute every audited count and run the acceptance criteria.

Shared by ``ctdesign verify`` and the acceptance test module so that both
report the same lines.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any, Callable

import numpy as np

from . import analysis as an
from . import constructions as cons
from . import screening as sc
from .errors import DesignError, TheoremViolation
from .johnson import Design, distance, unrank
from .permgroup import PermGroup, orbits_on_ksubsets, wreath_product, young_subgroup

PASS, FAIL = "PASS", "FAIL"


# ---- bundled (design, group) pairs -------------------------------------------

@lru_cache(maxsize=None)
def _instances() -> tuple[tuple[str, Design, PermGroup | None], ...]:
    g = cons.bundled_group
    out: list[tuple[str, Design, PermGroup | None]] = [
        ("fano", cons.pg_lines(2)[0], g("pgl3_2")),
        ("pg3", cons.pg_lines(3)[0], g("pgl3_3")),
        ("biplane", cons.biplane11(), g("l2_11")),
        ("m11_12", cons.extended_biplane12(), g("m11_12")),
        ("witt12", cons.witt(12), g("m12")),
        ("inversive", cons.inversive_plane4(), g("pgaml2_16")),
        ("ag4", cons.ag_lines(4), None),
        ("witt22", cons.witt(22), g("m22")),
        ("witt23", cons.witt(23), g("m23")),
        ("witt24", cons.witt(24), g("m24")),
        ("example1a", cons.example1(7, 3, [0, 1]), young_subgroup(7, [0, 1])),
        ("example1b", cons.example1(8, 3, [0, 1, 2, 3, 4]), young_subgroup(8, [0, 1, 2, 3, 4])),
        ("example2", cons.example2(4, 3), wreath_product(4, 2)),
        ("example3", cons.example3(4, 2), wreath_product(2, 4)),
        ("example4", cons.example4(3, 3), wreath_product(3, 3)),
        ("example5", cons.example5(3, 3), wreath_product(3, 3)),
        ("two_disjoint", cons.disjoint_blocks(6, 3), wreath_product(3, 2)),
        ("triples", cons.disjoint_blocks(9, 3), wreath_product(3, 3)),
    ]
    return tuple(out)


def bundled_instances(include_large: bool = True) -> list[tuple[str, Design, PermGroup | None]]:
    """Named (design, group) pairs; ``include_large`` adds the 22-24 point Witt designs."""
    return [t for t in _instances() if include_large or t[1].v < 22]


def instance(name: str) -> tuple[Design, PermGroup | None]:
    for n, d, G in _instances():
        if n == name:
            return d, G
    raise KeyError(name)


@lru_cache(maxsize=None)
def partition_of(name: str) -> an.DistancePartition:
    return an.distance_partition(instance(name)[0])


@lru_cache(maxsize=None)
def census_of(name: str) -> an.TransitivityVerdict:
    d, G = instance(name)
    return an.is_completely_transitive(d, G, partition_of(name))


# ---- audit recomputation ---------------------------------------------------------

def _m12_orbits_meeting_c2() -> int:
    part = partition_of("m11_12")
    orbs = orbits_on_ksubsets(cons.bundled_group("m12"), 6)
    return int(np.unique(orbs.labels[part.cells[2]]).size)


def _m11_hexad_orbits() -> list[int]:
    w12 = cons.witt(12)
    orbs = orbits_on_ksubsets(cons.bundled_group("m11_12"), 6)
    labels = orbs.labels[np.array(w12.ranks())]
    _, counts = np.unique(labels, return_counts=True)
    return sorted(int(c) for c in counts)


def _biplane_pairs() -> list[list[int]]:
    census = census_of("biplane").census
    order = census_of("biplane").order
    return [[c["size"], order // c["size"]] for c in census if c["distance"] != 0]


def _pairs_dq(table: sc.CandidateTable, stage: str) -> list[list[int]]:
    return [[d, q] for q, d in table.open_params(stage)]


RECOMPUTE: dict[str, Callable[[], Any]] = {
    "fano_r": lambda: partition_of("fano").r,
    "pg3_r": lambda: partition_of("pg3").r,
    "w24_r": lambda: partition_of("witt24").r,
    "w24_orbits": lambda: len(census_of("witt24").census),
    "w23_r": lambda: partition_of("witt23").r,
    "w23_orbits": lambda: len(census_of("witt23").census),
    "w22_cr": lambda: an.is_completely_regular(instance("witt22")[0], partition_of("witt22")).equitable,
    "ag24_c2": lambda: partition_of("ag4").sizes[2],
    "inversive_c1": lambda: partition_of("inversive").sizes[1],
    "inversive_c2": lambda: comb(17, 5) - partition_of("inversive").sizes[0] - partition_of("inversive").sizes[1],
    "inversive_c2_divides_order": lambda: census_of("inversive").order % partition_of("inversive").sizes[2] == 0,
    "inversive_ct": lambda: census_of("inversive").completely_transitive,
    "biplane_orbits": lambda: census_of("biplane").orbit_sizes,
    "biplane_stabilizers": lambda: [p[1] for p in _biplane_pairs()],
    "biplane_stabilizer_pairs": _biplane_pairs,
    "biplane_r": lambda: partition_of("biplane").r,
    "m11_12_orbits": lambda: census_of("m11_12").orbit_sizes,
    "m11_12_hexad_orbits": _m11_hexad_orbits,
    "m11_12_cr": lambda: an.is_completely_regular(instance("m11_12")[0], partition_of("m11_12")).equitable,
    "m11_12_ct": lambda: census_of("m11_12").completely_transitive,
    "m12_orbits_meeting_c2": _m12_orbits_meeting_c2,
    "unitary_coarse": lambda: [q for q in sc.prime_powers(2, 64) if sc.unitary_coarse_ok(q)],
    "l2_survivors": lambda: [q for q, _ in sc.screen_l2().open_params("coarse_480a")],
    "l2_k5": lambda: [r.q for r in sc.screen_l2().survivors("k5_divisibility")],
    "l2_k6": lambda: sorted({r.q for r in sc.screen_l2().survivors("coarse_3600a")}),
    "l2_k6_divisibility": lambda: [[r.q, r.k_range[0]] for r in sc.screen_l2().survivors("divisibility")],
    "projective_d2d1": lambda: _pairs_dq(sc.screen_projective(), "d2d1"),
    "projective_refined": lambda: _pairs_dq(sc.screen_projective(), "k1v1"),
    "projective_refined_count": lambda: len(sc.screen_projective().open_params("k1v1")),
    "affine_coarse": lambda: _pairs_dq(sc.screen_affine(), "d1q"),
    "affine_display": lambda: None,
    "mathieu_i": lambda: sc.mathieu_k("i"),
    "mathieu_ii": lambda: sc.mathieu_k("ii"),
    "mathieu_iii": lambda: sc.mathieu_k("iii"),
    "mathieu_iv": lambda: sc.mathieu_k("iv"),
    "mathieu_v": lambda: sc.mathieu_k("v"),
    "hs_cap": lambda: sc.orbit_bound_max_k(176, sc.SPORADIC["HS"][2]),
    "hs_k": lambda: sc.hs_candidates(),
    "hs_k_lcm": lambda: sc.hs_candidates(predicate="lcm"),
    "co3_k": sc.co3_candidates,
}


def audit(name: str) -> sc.AuditRow:
    return sc.audit_counts(name, RECOMPUTE[name]())


def run_audit(names: list[str] | None = None) -> list[sc.AuditRow]:
    return [audit(n) for n in (names or list(sc.audit_manifest()))]


# ---- acceptance criteria -----------------------------------------------------

@dataclass
class Check:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class CriterionResult:
    number: int
    title: str
    limit: float
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0
    error: str = ""

    @property
    def in_time(self) -> bool:
        return self.seconds <= self.limit

    @property
    def status(self) -> str:
        return PASS if not self.error and self.in_time and all(c.ok for c in self.checks) else FAIL

    def line(self) -> str:
        failed = [c.label for c in self.checks if not c.ok]
        why = ""
        if self.error:
            why = f" error: {self.error}"
        elif failed:
            why = " failed: " + "; ".join(failed)
        elif not self.in_time:
            why = f" over time limit {self.limit:g}s"
        return f"[{self.status}] criterion {self.number}: {self.title} ({self.seconds:.2f}s){why}"

    def report(self) -> str:
        lines = [self.line()]
        for c in self.checks:
            mark = "ok " if c.ok else "BAD"
            lines.append(f"    {mark} {c.label}" + (f"  [{c.detail}]" if c.detail else ""))
        return "\n".join(lines)


def _eq(label: str, got: Any, want: Any) -> Check:
    return Check(label, got == want, f"got {got}, expected {want}")


def _audit_check(label: str, name: str, want_status: str) -> Check:
    row = audit(name)
    return Check(label, row.status == want_status,
                 f"{row.status}: claimed {row.claimed}, recomputed {row.recomputed}")


def _crit1() -> list[Check]:
    d, G = instance("fano")
    rep = an.analyze(d, G)
    return [_eq("r", rep.r, 1), _eq("completely regular", rep.completely_regular.equitable, True),
            _eq("completely transitive under PGL(3,2)", rep.group.completely_transitive, True)]


def _crit2() -> list[Check]:
    d, G = instance("pg3")
    rep = an.analyze(d, G)
    return [_eq("delta", rep.delta, 3), _eq("r", rep.r, 2),
            _eq("completely transitive under PGL(3,3)", rep.group.completely_transitive, True)]


def _witt_checks(name: str, blocks: int, t: int | None, r: int, orbits: int) -> list[Check]:
    d, G = instance(name)
    part = an.distance_partition(d)
    ct = an.is_completely_transitive(d, G, part)
    out = [_eq("blocks", len(d.blocks), blocks)]
    if t is not None:
        out.append(_eq("strength", an.strength(d), t))
    out += [
        _eq("r", part.r, r),
        _eq("completely regular", an.is_completely_regular(d, part).equitable, True),
        _eq("orbits on k-subsets", len(ct.census), orbits),
        _eq("completely transitive", ct.completely_transitive, True),
    ]
    return out


def _crit3() -> list[Check]:
    return _witt_checks("witt24", 759, 5, 2, 3)


def _crit4() -> list[Check]:
    return _witt_checks("witt23", 253, None, 3, 4)


def _crit5() -> list[Check]:
    d, _ = instance("witt22")
    v = an.is_completely_regular(d)
    w = v.witness or {}
    ok = bool(w) and w["count"] != w["reference_count"] and w["cell"] == an.distance_partition(d).distance_of(
        sum(1 << x for x in w["vertex"]))
    return [_eq("completely regular", v.equitable, False), Check("explicit witness", ok, str(w))]


def _crit6() -> list[Check]:
    d, G = instance("biplane")
    rep = an.analyze(d, G)
    return [
        _eq("delta", rep.delta, 3),
        _eq("r", rep.r, 2),
        _eq("orbits on 5-subsets", len(rep.group.census), 4),
        _eq("completely transitive", rep.group.completely_transitive, False),
        _audit_check("orbit sizes audited against {11,330,66,55}", "biplane_orbits", sc.PASS),
        _audit_check("stabilizer orders audited against {2,12,10}", "biplane_stabilizers", sc.PASS),
    ]


def _crit7() -> list[Check]:
    d, G = instance("m11_12")
    part = partition_of("m11_12")
    ct = census_of("m11_12")
    cr = an.is_completely_regular(d, part)
    orbit22 = [c for c in ct.census if c["size"] == 22 and c["distance"] == 0]
    return [
        _eq("orbits on 6-subsets", len(ct.census), 4),
        _eq("orbit sizes", sorted(ct.orbit_sizes), [22, 110, 132, 660]),
        Check("22-block orbit is C0", bool(orbit22)),
        _eq("C0 is a 3-(12,6,2) design", cons.is_t_design(d, 3, 2), True),
        _eq("delta", an.min_distance(d), 3),
        Check("covering radius <= 2", part.r <= 2, f"r = {part.r}"),
        Check("ground truth reported", True,
              f"CR={cr.equitable}, CT={ct.completely_transitive}, cells={part.sizes}, "
              f"M12 orbits meeting C2={_m12_orbits_meeting_c2()}"),
    ]


def _crit8() -> list[Check]:
    d, _ = instance("inversive")
    part = partition_of("inversive")
    return [
        _eq("circles", len(d.blocks), 68),
        _eq("every triple on exactly one circle", cons.is_t_design(d, 3, 1), True),
        _eq("r", part.r, 2),
        _eq("|C2|", part.sizes[2], 2040),
        _audit_check("|C2| flagged against 2^2.11^2.17", "inversive_c2", sc.MISMATCH),
    ]


def _crit9() -> list[Check]:
    return [_eq("|C2|", partition_of("ag4").sizes[2], 840),
            _audit_check("matches 2^3.3.5.7", "ag24_c2", sc.PASS)]


def _crit10() -> list[Check]:
    out = [
        _eq("Suzuki eliminated", sc.screen_suzuki().survivors(), []),
        _eq("U3 eliminated", sc.screen_unitary().survivors(), []),
        _eq("Ree eliminated", sc.screen_ree().survivors(), []),
    ]
    for label, name in [
        ("U3 coarse q in {2,3}", "unitary_coarse"),
        ("L2 survivors", "l2_survivors"),
        ("projective d2d1 list", "projective_d2d1"),
        ("projective refined list", "projective_refined"),
        ("affine list", "affine_coarse"),
        ("Mathieu (i)", "mathieu_i"),
        ("Mathieu (ii)", "mathieu_ii"),
        ("Mathieu (iii)", "mathieu_iii"),
        ("Mathieu (iv)", "mathieu_iv"),
        ("Mathieu (v)", "mathieu_v"),
        ("HS k in {8,11,16}", "hs_k"),
    ]:
        out.append(_audit_check(label, name, sc.PASS))
    row = audit("hs_k_lcm")
    out.append(Check("HS with k | |G| and (v-k) | |G| (separate predicate, informational)", True,
                     f"{row.status}: recomputed {row.recomputed}"))
    return out


def _crit11() -> list[Check]:
    out: list[Check] = []
    # distance formula against BFS from a single vertex
    ok = True
    for v, k in [(7, 3), (8, 4)]:
        n = comb(v, k)
        for a in range(n):
            dist = an.distance_partition(Design(v, k, (unrank(a, v, k),))).dist
            ok &= all(int(dist[b]) == distance(unrank(a, v, k), unrank(b, v, k)) for b in range(n))
    out.append(Check("distance formula equals BFS on J(7,3), J(8,4)", ok))

    opp_cr_ok = strength_eq = ct_cr = True
    bad: list[str] = []
    for name, d, G in bundled_instances():
        part = partition_of(name)
        cr = an.is_completely_regular(d, part).equitable
        if part.r == 0:
            continue
        opp = an.opposite(d, part)
        opp_cr = an.is_completely_regular(opp).equitable
        if cr != opp_cr:
            opp_cr_ok = False
            bad.append(f"opposite:{name}")
        if an.strength(d) != an.strength(opp):
            strength_eq = False
            bad.append(f"strength:{name}")
        if G is not None and census_of(name).completely_transitive and not cr:
            ct_cr = False
            bad.append(f"ct-cr:{name}")
    out.append(Check("C0 completely regular iff opposite is", opp_cr_ok, ", ".join(bad)))
    out.append(Check("strength(C) == strength(opposite)", strength_eq, ", ".join(bad)))
    out.append(Check("completely transitive implies completely regular", ct_cr, ", ".join(bad)))

    ok = True
    for name in ("example1a", "example1b"):
        ok &= an.cells_by_meeting_y(partition_of(name), _young_cells(name))
    out.append(Check("example 1 cells meet Y in m - i points", ok))

    verdicts = {}
    ok = True
    for name, d, G in bundled_instances():
        if G is None or len(d.blocks) < 2 or an.min_distance(d) < 3 or not census_of(name).completely_transitive:
            continue
        try:
            verdicts[name] = an.theorem41_verdict(d, G, partition_of(name))
        except (DesignError, TheoremViolation) as exc:
            ok = False
            verdicts[name] = f"error: {exc}"
    out.append(Check("flag transitivity and trichotomy on completely transitive designs with delta >= 3",
                     ok and bool(verdicts), ", ".join(f"{k}={v}" for k, v in verdicts.items())))
    return out


def _young_cells(name: str) -> list[int]:
    return {"example1a": [0, 1], "example1b": [0, 1, 2, 3, 4]}[name]


CRITERIA: list[tuple[int, str, float, Callable[[], list[Check]]]] = [
    (1, "Fano plane r=1, CR, CT under PGL(3,2)", 1.0, _crit1),
    (2, "PG(2,3) lines delta=3, r=2, CT under PGL(3,3)", 1.0, _crit2),
    (3, "Witt-24 octads: strength 5, r=2, CR, 3 M24 orbits, CT", 60.0, _crit3),
    (4, "Witt-23: r=3, CR, 4 M23 orbits, CT", 60.0, _crit4),
    (5, "Witt-22 not completely regular, with witness", 30.0, _crit5),
    (6, "biplane under L2(11): delta=3, r=2, 4 orbits, not CT, audited census", 5.0, _crit6),
    (7, "M11 on 12 points, k=6: orbits 22,110,132,660; 3-(12,6,2) with delta=3, r<=2", 5.0, _crit7),
    (8, "inversive plane of order 4: 68 circles, 3-(17,5,1), r=2, |C2|=2040 flagged", 5.0, _crit8),
    (9, "AG(2,4) lines: |C2| = 840", 5.0, _crit9),
    (10, "screening reproduction", 1.0, _crit10),
    (11, "property suites", 120.0, _crit11),
]


def run_criterion(number: int) -> CriterionResult:
    _, title, limit, fn = next(c for c in CRITERIA if c[0] == number)
    res = CriterionResult(number, title, limit)
    t0 = time.perf_counter()
    try:
        res.checks = fn()
    except Exception as exc:  # reported as a failing line, not raised
        res.error = f"{type(exc).__name__}: {exc}"
    res.seconds = time.perf_counter() - t0
    return res


def run_all() -> list[CriterionResult]:
    return [run_criterion(n) for n, *_ in CRITERIA]


__all__ = [
    "CRITERIA", "CriterionResult", "Check", "PASS", "FAIL", "bundled_instances", "instance",
    "run_all", "run_criterion", "run_audit", "audit", "RECOMPUTE",
]
