"""Distance partitions and the regularity/transitivity verdicts built on them."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

import numpy as np

from . import kernels
from .errors import DesignError, NotPreservedError, TheoremViolation
from .johnson import Design, full_set, points, points_array, popcount, rank, subset, unrank
from .permgroup import (
    TWO_TRANSITIVE,
    PermGroup,
    check_cap,
    classify_action,
    flag_orbit_check,
    orbits_on_ksubsets,
)

INF = math.inf


@dataclass
class DistancePartition:
    """Cells C_0..C_r of J(v,k) by distance from a design."""

    v: int
    k: int
    dist: np.ndarray
    cells: list[np.ndarray]

    @property
    def r(self) -> int:
        return len(self.cells) - 1

    @property
    def sizes(self) -> list[int]:
        return [int(c.size) for c in self.cells]

    def cell_design(self, i: int) -> Design:
        masks = kernels.impl.unrank_all(self.v, self.k)[self.cells[i]]
        return Design(self.v, self.k, tuple(masks.tolist()))

    def distance_of(self, mask: int) -> int:
        return int(self.dist[rank(mask, self.v, self.k)])


def distance_partition(d: Design, max_ranks: int | None = None) -> DistancePartition:
    check_cap(d.v, d.k, max_ranks)
    seeds = np.array(d.ranks(), dtype=np.int64)
    dist = kernels.impl.bfs_distances(d.v, d.k, seeds)
    r = int(dist.max())
    order = np.argsort(dist, kind="stable")
    bounds = np.searchsorted(dist[order], np.arange(r + 2))
    cells = [order[bounds[i] : bounds[i + 1]] for i in range(r + 1)]
    return DistancePartition(d.v, d.k, dist, cells)


def min_distance(d: Design) -> float:
    """Least k - |a & b| over distinct blocks; ``inf`` for a single block."""
    if len(d.blocks) < 2:
        return INF
    blocks = np.array(d.blocks, dtype=np.uint64)
    best = d.k
    for i in range(len(blocks) - 1):
        common = np.bitwise_count(blocks[i] & blocks[i + 1 :])
        best = min(best, d.k - int(common.max()))
    return best


def covering_radius(d: Design, max_ranks: int | None = None) -> int:
    return distance_partition(d, max_ranks).r


def _coverage(d: Design, t: int, chunk_rows: int = 1 << 21) -> np.ndarray:
    """Number of blocks through each t-subset, indexed by colex rank in J(v,t)."""
    n = comb(d.v, t)
    if t == 0:
        return np.array([len(d.blocks)], dtype=np.int64)
    combos = np.array(list(itertools.combinations(range(d.k), t)), dtype=np.int64)
    counts = np.zeros(n, dtype=np.int64)
    step = max(1, chunk_rows // len(combos))
    for start in range(0, len(d.blocks), step):
        pts = points_array(d.blocks[start : start + step], d.v, d.k).astype(np.uint64)
        chosen = pts[:, combos].reshape(-1, t)
        masks = np.bitwise_or.reduce(np.left_shift(np.uint64(1), chosen), axis=1)
        counts += np.bincount(kernels.impl.rank_masks(masks, d.v, t), minlength=n)
    return counts


def is_t_design(d: Design, t: int) -> bool:
    cov = _coverage(d, t)
    return bool(cov.min() == cov.max())


def strength(d: Design) -> int:
    """Largest t such that every t-subset lies in the same number of blocks."""
    # a t-design is a (t-1)-design, so the first failure ends the search
    for t in range(1, d.k + 1):
        if not is_t_design(d, t):
            return t - 1
    return d.k


@dataclass
class EquitabilityVerdict:
    equitable: bool
    intersection_numbers: list[list[int]] | None = None
    witness: dict[str, int] | None = None
    trivial: bool = False

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"verdict": self.equitable}
        if self.equitable:
            out["intersection_numbers"] = self.intersection_numbers
        else:
            out["witness"] = self.witness
        if self.trivial:
            out["trivial"] = True
        return out


def is_completely_regular(d: Design, partition: DistancePartition | None = None,
                          max_ranks: int | None = None) -> EquitabilityVerdict:
    """Is the distance partition equitable?  Gives b[i][j] or a counterexample vertex."""
    part = partition or distance_partition(d, max_ranks)
    if part.r == 0:
        return EquitabilityVerdict(True, [[d.k * (d.v - d.k)]], trivial=True)
    mat, bad = kernels.impl.neighbor_profile(d.v, d.k, part.dist.astype(np.int32), part.r + 1)
    if bad is None:
        return EquitabilityVerdict(True, mat.tolist())
    r, i, j, count, expected = bad
    reference = int(part.cells[i][0])
    witness = {
        "vertex": list(points(unrank(r, d.v, d.k))),
        "reference": list(points(unrank(reference, d.v, d.k))),
        "cell": i,
        "neighbour_cell": j,
        "count": count,
        "reference_count": expected,
    }
    return EquitabilityVerdict(False, witness=witness)


@dataclass
class TransitivityVerdict:
    completely_transitive: bool
    order: int
    census: list[dict[str, Any]] = field(default_factory=list)

    @property
    def orbit_sizes(self) -> list[int]:
        return [c["size"] for c in self.census]


def check_preserves(d: Design, G: PermGroup) -> None:
    if G.v != d.v:
        raise NotPreservedError(f"group degree {G.v} != design v {d.v}")
    if not G.preserves(d):
        raise NotPreservedError(f"{G.name or 'group'} does not preserve {d.name or 'the design'}")


def is_completely_transitive(d: Design, G: PermGroup, partition: DistancePartition | None = None,
                             max_ranks: int | None = None) -> TransitivityVerdict:
    """Do the G-orbits on k-subsets coincide with the distance cells?"""
    check_preserves(d, G)
    part = partition or distance_partition(d, max_ranks)
    orbs = orbits_on_ksubsets(G, d.k, max_ranks)
    census = []
    for cell in orbs.cells:
        ds = np.unique(part.dist[cell])
        census.append({"size": int(cell.size), "distance": int(ds[0]) if ds.size == 1 else [int(x) for x in ds]})
    census.sort(key=lambda c: (c["distance"] if isinstance(c["distance"], int) else c["distance"][0], c["size"]))
    ok = len(orbs) == part.r + 1 and all(isinstance(c["distance"], int) for c in census)
    return TransitivityVerdict(ok, G.order(), census)


def opposite(d: Design, partition: DistancePartition | None = None, max_ranks: int | None = None) -> Design:
    """The farthest cell C_r as a design."""
    part = partition or distance_partition(d, max_ranks)
    name = f"opposite({d.name})" if d.name else ""
    return part.cell_design(part.r).with_name(name)


def point_closure(d: Design, x: int) -> tuple[int, bool]:
    """Intersection of all blocks through x, and whether any block contains x.

    When no block contains x the whole point set is returned with False.
    """
    if not 0 <= x < d.v:
        raise DesignError(f"point {x} out of range")
    out = full_set(d.v)
    found = False
    for b in d.blocks:
        if b >> x & 1:
            out &= b
            found = True
    return out, found


def intersection_profile(s: int, partition: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Multiset of |s & Y_i| over the cells of a uniform partition, largest first."""
    cells = [subset(Y) for Y in partition]
    sizes = {popcount(c) for c in cells}
    union = 0
    for c in cells:
        if union & c:
            raise DesignError("partition cells overlap")
        union |= c
    if len(sizes) != 1 or union != full_set(popcount(union)) or (s & ~union):
        raise DesignError("not a uniform partition of the point set")
    return tuple(sorted((popcount(s & c) for c in cells), reverse=True))


def cells_by_meeting_y(part: DistancePartition, Y: Sequence[int]) -> bool:
    """Does C_i consist exactly of the k-sets meeting Y in m - i points, m = min(k, |Y|)?"""
    ymask = subset(Y)
    m = min(popcount(ymask), part.k)
    masks = kernels.impl.unrank_all(part.v, part.k)
    meet = np.bitwise_count(masks & np.uint64(ymask)).astype(np.int64)
    return bool(np.all(part.dist.astype(np.int64) == m - meet))


CASE_TWO_DISJOINT = "a"
CASE_DISJOINT_TRIPLES = "b"
CASE_TWO_TRANSITIVE = "c"


def theorem41_verdict(d: Design, G: PermGroup, partition: DistancePartition | None = None) -> str:
    """Flag transitivity plus the two-disjoint / disjoint-triples / 2-transitive trichotomy.

    Returns "a", "b" or "c".  Raises DesignError when the hypotheses
    (at least two blocks, minimum distance >= 3, completely transitive under G)
    fail, and TheoremViolation if the conclusion does not hold.
    """
    if len(d.blocks) < 2:
        raise DesignError("need at least two blocks")
    if min_distance(d) < 3:
        raise DesignError("need minimum distance >= 3")
    part = partition or distance_partition(d)
    if not is_completely_transitive(d, G, part).completely_transitive:
        raise DesignError("design is not completely transitive under the group")
    if not flag_orbit_check(G, d, d.blocks[0]):
        raise TheoremViolation("block stabilizer is not transitive on block x complement")
    union = 0
    disjoint = True
    for b in d.blocks:
        disjoint &= not (union & b)
        union |= b
    if d.v == 2 * d.k >= 6 and len(d.blocks) == 2 and disjoint:
        return CASE_TWO_DISJOINT
    if d.k == 3 and d.v % 3 == 0 and len(d.blocks) == d.v // 3 and disjoint:
        return CASE_DISJOINT_TRIPLES
    if classify_action(G).label == TWO_TRANSITIVE:
        return CASE_TWO_TRANSITIVE
    raise TheoremViolation("completely transitive design fits none of the three cases")


@dataclass
class AnalysisReport:
    design: Design
    delta: float
    r: int
    strength: int
    completely_regular: EquitabilityVerdict
    cell_sizes: list[int]
    group: TransitivityVerdict | None = None
    group_name: str = ""

    def to_dict(self) -> dict[str, Any]:
        d = self.design
        out: dict[str, Any] = {
            "name": d.name,
            "v": d.v,
            "k": d.k,
            "blocks": [list(points(b)) for b in d.blocks],
            "delta": "inf" if self.delta == INF else int(self.delta),
            "r": self.r,
            "cell_sizes": self.cell_sizes,
            "strength": self.strength,
            "completely_regular": self.completely_regular.to_dict(),
        }
        if self.group is not None:
            out["group"] = {
                "name": self.group_name,
                "order": self.group.order,
                "orbit_sizes": self.group.orbit_sizes,
                "orbits": self.group.census,
                "completely_transitive": self.group.completely_transitive,
            }
        return out


def analyze(d: Design, G: PermGroup | None = None, max_ranks: int | None = None) -> AnalysisReport:
    part = distance_partition(d, max_ranks)
    verdict = is_completely_regular(d, part)
    ct = is_completely_transitive(d, G, part, max_ranks) if G is not None else None
    return AnalysisReport(
        design=d,
        delta=min_distance(d),
        r=part.r,
        strength=strength(d),
        completely_regular=verdict,
        cell_sizes=part.sizes,
        group=ct,
        group_name=(G.name if G is not None else ""),
    )
