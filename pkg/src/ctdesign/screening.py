"""Order bounds and divisibility filters for 2-transitive group families.

Everything here is exact integer arithmetic.  Each family is screened by a
chain of named predicates; a row records which predicates it passed and the
first one it failed, so every verdict can be recomputed from the formulas.
Survivors are reported as OPEN (the screen cannot decide them).
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb, prod
from typing import Any, Callable, Iterable

from .gf import is_prime_power, prime_power

OPEN = "OPEN"
ELIMINATED = "ELIMINATED"


# ---- basic predicates -------------------------------------------------------

def orbit_bound_ok(v: int, k: int, order: int) -> bool:
    """C(v,k)/(k-1) <= order: some orbit on k-subsets must be that long."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return comb(v, k) <= (k - 1) * order


def quarter_bound_ok(v: int, order: int) -> bool:
    """C(v,5)/4 <= order, the k-free form of the orbit bound for 5 <= k < v/2."""
    return comb(v, 5) <= 4 * order


def quarter_bound_applies(v: int, k: int) -> bool:
    # the reduction to C(v,5)/4 needs k < v/2 and fails only at (v,k) = (12,6)
    return 5 <= k and 2 * k <= v and (v, k) != (12, 6)


def divisibility_ok(v: int, k: int, order: int, blocks: int | None = None) -> bool:
    """k(v-k) divides order, and also order/blocks when the block count is known."""
    n = k * (v - k)
    if order % n:
        return False
    if blocks is not None:
        if order % blocks:
            return False
        return (order // blocks) % n == 0
    return True


def divisibility_lcm_ok(v: int, k: int, order: int) -> bool:
    """k and v-k each divide order (weaker than the product condition)."""
    return order % k == 0 and order % (v - k) == 0


def block_stabilizer_divisibility_ok(v: int, k: int, order: int) -> bool:
    """k(v-k) divides |G_a| = order/|C0| for some orbit length |C0| >= 2."""
    n = k * (v - k)
    return order % n == 0 and order // n >= 2


def point_stabilizer_divisibility_ok(v: int, k: int, order: int) -> bool:
    """k(v-k) divides order/v, the point-stabilizer reading."""
    return order % v == 0 and (order // v) % (k * (v - k)) == 0


# ---- order formulas ----------------------------------------------------------

def gl_order(d: int, q: int) -> int:
    return prod(q**d - q**i for i in range(d))


def pgaml_order(d: int, q: int) -> int:
    _, a = prime_power(q)
    return a * gl_order(d, q) // (q - 1)


def agaml_order(d: int, q: int) -> int:
    _, a = prime_power(q)
    return a * q**d * gl_order(d, q)


def suzuki_order(q: int) -> int:
    _, a = prime_power(q)
    return (q**2 + 1) * q**2 * (q - 1) * a


def unitary_order(q: int) -> int:
    _, a = prime_power(q)
    return (q**3 + 1) * q**3 * (q**2 - 1) * 2 * a


def ree_order(q: int) -> int:
    _, a = prime_power(q)
    return (q**3 + 1) * q**3 * (q - 1) * a


def l2_order(q: int) -> int:
    _, a = prime_power(q)
    return (q + 1) * q * (q - 1) * a


# ---- family specs and tables ---------------------------------------------------

@dataclass(frozen=True)
class GroupFamilySpec:
    """A family of 2-transitive groups with degree and maximal order as formulas.

    ``params`` yields (q, d) pairs; d is 1 for families without a dimension.
    """

    tag: str
    degree: Callable[[int, int], int]
    order: Callable[[int, int], int]
    params: Callable[[], Iterable[tuple[int, int]]]
    description: str = ""


@dataclass
class CandidateRow:
    family: str
    q: int
    d: int
    v: int
    order: int
    k_range: range | tuple[int, ...]
    verdict: str
    failed: str = ""
    passed: tuple[str, ...] = ()
    note: str = ""

    def as_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "q": self.q,
            "d": self.d,
            "v": self.v,
            "order": self.order,
            "k": format_k(self.k_range),
            "verdict": self.verdict,
            "failed": self.failed,
            "passed": list(self.passed),
            "note": self.note,
        }


@dataclass
class CandidateTable:
    family: str
    stages: tuple[str, ...]
    rows: list[CandidateRow] = field(default_factory=list)

    def survivors(self, stage: str | None = None) -> list[CandidateRow]:
        """Rows that passed every predicate up to and including ``stage``."""
        if stage is None:
            return [r for r in self.rows if r.verdict == OPEN]
        if stage not in self.stages:
            raise KeyError(stage)
        return [r for r in self.rows if stage in r.passed]

    def open_params(self, stage: str | None = None) -> list[tuple[int, int]]:
        return sorted({(r.q, r.d) for r in self.survivors(stage)})

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "q", "d", "v", "order", "k", "verdict", "failed", "passed", "note"])
        for r in self.rows:
            w.writerow([r.family, r.q, r.d, r.v, r.order, format_k(r.k_range),
                        r.verdict, r.failed, " ".join(r.passed), r.note])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"family {self.family}  stages: {' -> '.join(self.stages)}"]
        for r in self.rows:
            ks = format_k(r.k_range)
            tail = f"failed {r.failed}" if r.failed else "all passed"
            note = f"  ({r.note})" if r.note else ""
            lines.append(f"  q={r.q} d={r.d} v={r.v} |G|={r.order} k={ks}: {r.verdict}, {tail}{note}")
        opened = self.survivors()
        lines.append(f"  open: {len(opened)} of {len(self.rows)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict[str, Any]:
        return {"family": self.family, "stages": list(self.stages), "rows": [r.as_dict() for r in self.rows]}


def _run_chain(table: CandidateTable, base: dict[str, Any],
               checks: list[tuple[str, Callable[[], bool]]], note: str = "") -> CandidateRow:
    passed: list[str] = []
    for name, check in checks:
        if not check():
            row = CandidateRow(**base, verdict=ELIMINATED, failed=name, passed=tuple(passed), note=note)
            break
        passed.append(name)
    else:
        row = CandidateRow(**base, verdict=OPEN, passed=tuple(passed), note=note)
    table.rows.append(row)
    return row


def prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 2), hi + 1) if is_prime_power(q)]


def _admissible_k(v: int) -> range:
    return range(5, v // 2 + 1)


def format_k(ks: range | tuple[int, ...]) -> str:
    if isinstance(ks, range):
        return f"{ks.start}..{ks.stop - 1}" if ks.stop > ks.start else "-"
    return ",".join(map(str, ks)) or "-"


# ---- Suzuki, unitary, Ree -----------------------------------------------------

def _quarter_family(tag: str, qs: Iterable[int], degree, order, extra=None) -> CandidateTable:
    table = CandidateTable(tag, ("quarter_bound",) + (("admissible_k",) if extra else ()))
    for q in qs:
        v, n = degree(q), order(q)
        checks = [("quarter_bound", lambda v=v, n=n: quarter_bound_ok(v, n))]
        if extra:
            checks.append(("admissible_k", lambda v=v: extra(v)))
        _run_chain(table, dict(family=tag, q=q, d=1, v=v, order=n, k_range=_admissible_k(v)), checks)
    return table


def screen_suzuki(max_s: int = 8) -> CandidateTable:
    qs = [2 ** (2 * s + 1) for s in range(1, max_s + 1)]
    return _quarter_family("Sz", qs, lambda q: q**2 + 1, suzuki_order)


def unitary_coarse_ok(q: int) -> bool:
    _, a = prime_power(q)
    return (q - 1) ** 7 < 960 * a


def screen_unitary(max_q: int = 64) -> CandidateTable:
    table = CandidateTable("U3", ("coarse_960a", "quarter_bound", "admissible_k"))
    for q in prime_powers(2, max_q):
        v, n = q**3 + 1, unitary_order(q)
        _run_chain(table, dict(family="U3", q=q, d=1, v=v, order=n, k_range=_admissible_k(v)), [
            ("coarse_960a", lambda q=q: unitary_coarse_ok(q)),
            ("quarter_bound", lambda v=v, n=n: quarter_bound_ok(v, n)),
            ("admissible_k", lambda v=v: v // 2 >= 5),
        ])
    return table


def screen_ree(max_s: int = 6) -> CandidateTable:
    qs = [3 ** (2 * s + 1) for s in range(1, max_s + 1)]
    return _quarter_family("Ree", qs, lambda q: q**3 + 1, ree_order)


# ---- L2(q) ----------------------------------------------------------------------

def l2_coarse_ok(q: int) -> bool:
    _, a = prime_power(q)
    return (q - 2) * (q - 3) <= 480 * a


def l2_k5_ok(q: int) -> bool:
    return divisibility_ok(q + 1, 5, l2_order(q))


def l2_k6_coarse_ok(q: int) -> bool:
    _, a = prime_power(q)
    return (q - 2) * (q - 3) * (q - 4) <= 3600 * a


def l2_small_case(q: int) -> dict[str, Any]:
    """The q = 9, 11 cases with both divisor readings."""
    v, n = q + 1, l2_order(q)
    ks = _admissible_k(v)
    return {
        "q": q,
        "order": n,
        "k": format_k(ks),
        "divides_order": [k for k in ks if divisibility_ok(v, k, n)],
        "divides_block_stabilizer": [k for k in ks if block_stabilizer_divisibility_ok(v, k, n)],
    }


def screen_l2(max_q: int = 1024) -> CandidateTable:
    """L2(q) <= G <= PGammaL(2,q) on q+1 points, v >= 14.

    Rows are per (q, k).  The chain: coarse (q-2)(q-3) <= 480a, then for
    k = 5 the divisibility 5(v-5) | |G|, for k >= 6 the coarse bound
    (q-2)(q-3)(q-4) <= 3600a followed by k(v-k) | |G|.  Survivors then face
    the deep checks: the inversive-plane orbit count (q=16, k=5) and
    3 | |G_x| (q=17, k=6).
    """
    table = CandidateTable("L2", ("coarse_480a", "k5_divisibility", "coarse_3600a", "divisibility", "deep"))
    for q in prime_powers(13, max_q):
        v, n = q + 1, l2_order(q)
        base = dict(family="L2", q=q, d=1, v=v, order=n)
        if not l2_coarse_ok(q):
            table.rows.append(CandidateRow(**base, k_range=_admissible_k(v), verdict=ELIMINATED,
                                           failed="coarse_480a"))
            continue
        for k in _admissible_k(v):
            checks: list[tuple[str, Callable[[], bool]]] = [("coarse_480a", lambda: True)]
            if k == 5:
                checks.append(("k5_divisibility", lambda q=q: l2_k5_ok(q)))
            else:
                checks.append(("coarse_3600a", lambda q=q: l2_k6_coarse_ok(q)))
                checks.append(("divisibility", lambda v=v, k=k, n=n: divisibility_ok(v, k, n)))
            checks.append(("deep", lambda q=q, k=k: _l2_deep(q, k)[0]))
            note = _l2_deep(q, k)[1] if all(c() for _, c in checks[:-1]) else ""
            _run_chain(table, dict(base, k_range=(k,)), checks, note)
    return table


def _l2_deep(q: int, k: int) -> tuple[bool, str]:
    if (q, k) == (16, 5):
        return True, "C0 is the inversive plane of order 4; decided by orbit computation"
    if (q, k) == (17, 6):
        gx = l2_order(q) // (q + 1)
        return gx % 3 == 0, f"|G_x| = {gx}, needs 3 | |G_x|"
    return True, "no deep check"


# ---- projective and affine --------------------------------------------------------

def projective_degree(q: int, d: int) -> int:
    return (q**d - 1) // (q - 1)


def projective_d2d1_ok(q: int, d: int) -> bool:
    return d * d + d - 1 > q ** (d - 2) + q ** (d - 3)


def projective_kmin(q: int, d: int) -> int:
    """Least k with k-1 >= (v-1)/q."""
    return (projective_degree(q, d) - 1) // q + 1


def projective_k1v1_ok(q: int, d: int) -> bool:
    """(k-1) q^(d^2) >= C(v,k) at the least k allowed by k-1 >= (v-1)/q."""
    v, k = projective_degree(q, d), projective_kmin(q, d)
    return (k - 1) * q ** (d * d) >= comb(v, k)


def projective_exact_ok(q: int, d: int) -> bool:
    """As k1v1 but with the exact order of PGammaL(d,q) in place of q^(d^2)."""
    v, k = projective_degree(q, d), projective_kmin(q, d)
    return orbit_bound_ok(v, k, pgaml_order(d, q))


def projective_exact_k(q: int, d: int) -> tuple[int, ...]:
    """Admissible k (5 <= k <= v/2, k >= kmin) that pass the exact orbit bound."""
    v, n = projective_degree(q, d), pgaml_order(d, q)
    return tuple(k for k in range(max(5, projective_kmin(q, d)), v // 2 + 1) if orbit_bound_ok(v, k, n))


def screen_projective(max_d: int = 12, max_q: int = 64) -> CandidateTable:
    table = CandidateTable("PGammaL_d", ("d2d1", "k1v1", "exact_order", "admissible_k"))
    for d in range(3, max_d + 1):
        for q in prime_powers(2, max_q):
            v = projective_degree(q, d)
            ks = projective_exact_k(q, d) if projective_d2d1_ok(q, d) else ()
            _run_chain(table, dict(family="PGammaL_d", q=q, d=d, v=v, order=pgaml_order(d, q), k_range=ks), [
                ("d2d1", lambda q=q, d=d: projective_d2d1_ok(q, d)),
                ("k1v1", lambda q=q, d=d: projective_k1v1_ok(q, d)),
                ("exact_order", lambda q=q, d=d: projective_exact_ok(q, d)),
                ("admissible_k", lambda ks=ks: bool(ks)),
            ])
    return table


def affine_coarse_ok(q: int, d: int) -> bool:
    return (d + 1) ** 2 > q ** (d - 1)


def affine_exact_ok(q: int, d: int) -> bool:
    """Exact orbit bound at the least k = q^(d-1)."""
    k = q ** (d - 1)
    return k >= 2 and orbit_bound_ok(q**d, k, agaml_order(d, q))


def affine_exact_k(q: int, d: int) -> tuple[int, ...]:
    v, n = q**d, agaml_order(d, q)
    return tuple(k for k in range(max(5, q ** (d - 1)), v // 2 + 1) if orbit_bound_ok(v, k, n))


def screen_affine(max_d: int = 12, max_q: int = 64) -> CandidateTable:
    table = CandidateTable("AGammaL_d", ("d1q", "exact_order", "admissible_k"))
    for d in range(2, max_d + 1):
        for q in prime_powers(2, max_q):
            ks = affine_exact_k(q, d) if affine_coarse_ok(q, d) else ()
            _run_chain(table, dict(family="AGammaL_d", q=q, d=d, v=q**d, order=agaml_order(d, q), k_range=ks), [
                ("d1q", lambda q=q, d=d: affine_coarse_ok(q, d)),
                ("exact_order", lambda q=q, d=d: affine_exact_ok(q, d)),
                ("admissible_k", lambda ks=ks: bool(ks)),
            ])
    return table


# ---- sporadic ------------------------------------------------------------------

SPORADIC = {
    # case: (degree, group name, order)
    "i": (11, "M11", 7920),
    "ii": (12, "M12", 95040),
    "iii": (22, "Aut(M22)", 887040),
    "iv": (23, "M23", 10200960),
    "v": (24, "M24", 244823040),
    "HS": (176, "HS", 44352000),
    "Co3": (276, "Co3", 495766656000),
}

HS_STATED_CAP = 19


def mathieu_k(case: str) -> tuple[int, ...]:
    v, _, n = SPORADIC[case]
    return tuple(k for k in range(5, v // 2 + 1) if divisibility_ok(v, k, n))


def orbit_bound_max_k(v: int, order: int, lo: int = 2) -> int:
    """Largest k <= v/2 passing the orbit bound (the ratio increases with k)."""
    best = lo - 1
    for k in range(lo, v // 2 + 1):
        if not orbit_bound_ok(v, k, order):
            break
        best = k
    return best


def hs_candidates(cap: int | None = HS_STATED_CAP, predicate: str = "product") -> tuple[int, ...]:
    """HS on 176 points: k in 5..cap passing the chosen divisibility predicate.

    ``cap=None`` uses the exact orbit bound instead of the stated cap.
    """
    v, _, n = SPORADIC["HS"]
    hi = orbit_bound_max_k(v, n) if cap is None else cap
    test = {"product": divisibility_ok, "lcm": divisibility_lcm_ok}[predicate]
    return tuple(k for k in range(5, hi + 1) if test(v, k, n))


def co3_candidates() -> tuple[int, ...]:
    v, _, n = SPORADIC["Co3"]
    return tuple(k for k in range(5, orbit_bound_max_k(v, n) + 1) if divisibility_ok(v, k, n))


def screen_sporadic() -> CandidateTable:
    table = CandidateTable("sporadic", ("orbit_bound", "divisibility"))
    for case, (v, name, n) in SPORADIC.items():
        hi = HS_STATED_CAP if case == "HS" else v // 2
        for k in range(5, hi + 1):
            note = name
            if case == "HS" and not orbit_bound_ok(v, k, n):
                note += f"; exact orbit bound fails, kept by the stated cap k <= {HS_STATED_CAP}"
            bound = (lambda: True) if case == "HS" else (lambda v=v, k=k, n=n: orbit_bound_ok(v, k, n))
            _run_chain(table, dict(family=case, q=0, d=0, v=v, order=n, k_range=(k,)), [
                ("orbit_bound", bound),
                ("divisibility", lambda v=v, k=k, n=n: divisibility_ok(v, k, n)),
            ], note)
    return table


# ---- dispatch -------------------------------------------------------------------

FAMILIES: dict[str, Callable[[], CandidateTable]] = {
    "suzuki": screen_suzuki,
    "unitary": screen_unitary,
    "ree": screen_ree,
    "L2": screen_l2,
    "projective": screen_projective,
    "affine": screen_affine,
    "sporadic": screen_sporadic,
}

FAMILY_SPECS: dict[str, GroupFamilySpec] = {
    "suzuki": GroupFamilySpec("Sz", lambda q, d: q**2 + 1, lambda q, d: suzuki_order(q),
                              lambda: ((2 ** (2 * s + 1), 1) for s in range(1, 9)), "Sz(q) <= G <= Aut Sz(q)"),
    "unitary": GroupFamilySpec("U3", lambda q, d: q**3 + 1, lambda q, d: unitary_order(q),
                               lambda: ((q, 1) for q in prime_powers(2, 64)), "U3(q) <= G <= PGammaU3(q)"),
    "ree": GroupFamilySpec("Ree", lambda q, d: q**3 + 1, lambda q, d: ree_order(q),
                           lambda: ((3 ** (2 * s + 1), 1) for s in range(1, 7)), "Ree(q) <= G <= Aut Ree(q)"),
    "L2": GroupFamilySpec("L2", lambda q, d: q + 1, lambda q, d: l2_order(q),
                          lambda: ((q, 1) for q in prime_powers(13, 1024)), "L2(q) <= G <= PGammaL2(q)"),
    "projective": GroupFamilySpec("PGammaL_d", lambda q, d: projective_degree(q, d),
                                  lambda q, d: pgaml_order(d, q),
                                  lambda: ((q, d) for d in range(3, 13) for q in prime_powers(2, 64)),
                                  "Ld(q) <= G <= PGammaLd(q), d >= 3"),
    "affine": GroupFamilySpec("AGammaL_d", lambda q, d: q**d, lambda q, d: agaml_order(d, q),
                              lambda: ((q, d) for d in range(2, 13) for q in prime_powers(2, 64)),
                              "G <= AGammaLd(q), d >= 2"),
}


def family_screen(family: str | GroupFamilySpec) -> CandidateTable:
    key = family.tag if isinstance(family, GroupFamilySpec) else family
    for name, spec in FAMILY_SPECS.items():
        if key in (name, spec.tag):
            return FAMILIES[name]()
    if key in FAMILIES:
        return FAMILIES[key]()
    raise KeyError(f"unknown family {key!r}; choose from {', '.join(FAMILIES)}")


# ---- audit ------------------------------------------------------------------------

PASS = "PASS"
MISMATCH = "MISMATCH"
FLAG = "FLAG"


@dataclass
class AuditRow:
    claim: str
    description: str
    claimed: Any
    recomputed: Any
    status: str

    def as_dict(self) -> dict[str, Any]:
        return {"claim": self.claim, "description": self.description, "claimed": self.claimed,
                "recomputed": self.recomputed, "status": self.status}


@lru_cache(maxsize=None)
def audit_manifest() -> dict[str, dict[str, Any]]:
    text = resources.files("ctdesign").joinpath("data/audit_manifest.json").read_text()
    return {c["name"]: c for c in json.loads(text)["claims"]}


def _normalise(value: Any, compare: str) -> Any:
    if compare == "multiset":
        return sorted(value)
    if compare == "set":
        return sorted(set(value))
    if compare == "pairs":
        return sorted(tuple(x) for x in value)
    return value


def audit_counts(claim: str, recomputed: Any) -> AuditRow:
    """Compare a registered claim against a recomputed value."""
    try:
        entry = audit_manifest()[claim]
    except KeyError:
        raise KeyError(f"claim {claim!r} is not in the audit manifest") from None
    compare = entry.get("compare", "exact")
    if compare == "flag":
        status = FLAG
    else:
        same = _normalise(entry["value"], compare) == _normalise(recomputed, compare)
        status = PASS if same else MISMATCH
    value = entry.get("value")
    if isinstance(recomputed, tuple):
        recomputed = list(recomputed)
    return AuditRow(claim, entry["description"], value, recomputed, status)

