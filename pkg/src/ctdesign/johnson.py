"""Vertex arithmetic of the Johnson graph J(v, k).

A k-subset of {0, ..., v-1} is stored as an int bitmask (bit x set iff x is
in the subset); v <= 64 keeps every subset inside one machine word.  Ranks
use colexicographic order, so the subsets of {0, ..., n-1} always occupy
ranks [0, C(n, k)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import DesignError

MAX_V = 64


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subset(points: Iterable[int], v: int | None = None) -> int:
    """Bitmask of an iterable of points."""
    mask = 0
    for x in points:
        if x < 0 or (v is not None and x >= v):
            raise DesignError(f"point {x} outside ground set of size {v}")
        bit = 1 << x
        if mask & bit:
            raise DesignError(f"repeated point {x}")
        mask |= bit
    return mask


def points(mask: int) -> tuple[int, ...]:
    """Sorted points of a bitmask."""
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def full_set(v: int) -> int:
    return (1 << v) - 1


def check_ground(v: int) -> None:
    if not 1 <= v <= MAX_V:
        raise DesignError(f"v must lie in [1, {MAX_V}], got {v}")


def check_subset(mask: int, v: int, k: int) -> None:
    check_ground(v)
    if mask < 0 or mask >> v:
        raise DesignError(f"subset {points(mask)} has points outside range({v})")
    if popcount(mask) != k:
        raise DesignError(f"subset {points(mask)} has size {popcount(mask)}, expected {k}")


def num_ranks(v: int, k: int) -> int:
    return comb(v, k)


def rank(mask: int, v: int, k: int | None = None) -> int:
    """Colexicographic rank of a k-subset of range(v)."""
    if k is None:
        k = popcount(mask)
    check_subset(mask, v, k)
    r = 0
    j = 0
    x = 0
    while mask:
        if mask & 1:
            j += 1
            r += comb(x, j)
        mask >>= 1
        x += 1
    return r


def unrank(index: int, v: int, k: int) -> int:
    """Inverse of :func:`rank`."""
    check_ground(v)
    if not 0 <= k <= v:
        raise DesignError(f"k={k} out of range for v={v}")
    if not 0 <= index < comb(v, k):
        raise DesignError(f"rank {index} outside [0, C({v},{k}))")
    mask = 0
    c = v - 1
    for j in range(k, 0, -1):
        while comb(c, j) > index:
            c -= 1
        mask |= 1 << c
        index -= comb(c, j)
        c -= 1
    return mask


def distance(a: int, b: int, v: int | None = None) -> int:
    """Graph distance k - |a & b| in J(v, k)."""
    k = popcount(a)
    if popcount(b) != k:
        raise DesignError("subsets of different sizes are not in the same Johnson graph")
    if v is not None:
        check_subset(a, v, k)
        check_subset(b, v, k)
    return k - popcount(a & b)


def neighbors(a: int, v: int) -> list[int]:
    """All k(v-k) subsets sharing exactly k-1 points with ``a``."""
    k = popcount(a)
    check_subset(a, v, k)
    if k == v or k == 0:
        raise DesignError(f"J({v},{k}) has a single vertex; no neighbours")
    inside = points(a)
    outside = points(full_set(v) & ~a)
    return [a ^ (1 << x) | (1 << y) for x in inside for y in outside]


@dataclass(frozen=True)
class Design:
    """A set of k-subsets (blocks) of a v-set, stored in rank order."""

    v: int
    k: int
    blocks: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        check_ground(self.v)
        if not self.blocks:
            raise DesignError("a design needs at least one block")
        _check_blocks(self.blocks, self.v, self.k)
        # for a fixed k, colex order is integer order of the masks
        ordered = tuple(sorted(int(b) for b in self.blocks))
        if any(a == b for a, b in zip(ordered, ordered[1:])):
            raise DesignError("duplicate blocks")
        object.__setattr__(self, "blocks", ordered)

    @classmethod
    def from_points(cls, v: int, blocks: Iterable[Sequence[int]], name: str = "") -> "Design":
        masks = [subset(b, v) for b in blocks]
        if not masks:
            raise DesignError("a design needs at least one block")
        return cls(v, popcount(masks[0]), tuple(masks), name)

    def __len__(self) -> int:
        return len(self.blocks)

    def __contains__(self, mask: int) -> bool:
        return mask in self.block_set

    @property
    def block_set(self) -> frozenset[int]:
        return _block_set(self)

    def point_blocks(self) -> list[tuple[int, ...]]:
        return [points(b) for b in self.blocks]

    def point_array(self) -> np.ndarray:
        """Blocks as a (len, k) array of points, each row increasing."""
        return points_array(self.blocks, self.v, self.k)

    def mask_array(self) -> np.ndarray:
        return np.array(self.blocks, dtype=np.uint64)

    def ranks(self) -> list[int]:
        from . import kernels

        return kernels.impl.rank_masks(self.mask_array(), self.v, self.k).tolist()

    def with_name(self, name: str) -> "Design":
        return Design(self.v, self.k, self.blocks, name)


@lru_cache(maxsize=256)
def _block_set(d: Design) -> frozenset[int]:
    return frozenset(d.blocks)


def _check_blocks(blocks: Sequence[int], v: int, k: int) -> None:
    if len(blocks) < 64:
        for b in blocks:
            check_subset(b, v, k)
        return
    try:
        arr = np.array(blocks, dtype=np.uint64)
    except (OverflowError, TypeError):  # negative or wider than 64 bits
        for b in blocks:
            check_subset(b, v, k)
        return
    high = arr >> np.uint64(v) if v < 64 else np.zeros_like(arr)
    bad = (high != 0) | (np.bitwise_count(arr) != k)
    if bad.any():
        check_subset(int(blocks[int(np.argmax(bad))]), v, k)


def points_array(masks: Sequence[int] | np.ndarray, v: int, k: int) -> np.ndarray:
    """Rows of increasing points for k-subset masks of range(v)."""
    arr = np.asarray(masks, dtype=np.uint64)
    bits = (arr[:, None] >> np.arange(v, dtype=np.uint64)) & np.uint64(1)
    return np.nonzero(bits)[1].reshape(arr.size, k)


def complement_map(d: Design) -> Design:
    """Replace every block by its complement; J(v,k) -> J(v,v-k)."""
    if d.k == d.v:
        raise DesignError("complement of the whole set is empty")
    full = full_set(d.v)
    name = f"complement({d.name})" if d.name else ""
    return Design(d.v, d.v - d.k, tuple(full & ~b for b in d.blocks), name)
