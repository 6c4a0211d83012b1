"""Pure numpy versions of the rank-space kernels.

Same signatures and results as the compiled module ``_ckernels``; used when
the extension is not built or when ``CTDESIGN_PURE=1`` is set.  The
neighbour loops are vectorised over all vertices of a BFS level at once,
one (removed point, added point) pair at a time.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


@lru_cache(maxsize=None)
def _binom(v: int) -> np.ndarray:
    t = np.zeros((v + 1, v + 2), dtype=np.int64)
    for n in range(v + 1):
        for j in range(n + 1):
            t[n, j] = comb(n, j)
    t.setflags(write=False)
    return t


def binom_table(v: int) -> np.ndarray:
    return _binom(v).copy()


@lru_cache(maxsize=None)
def _byte_tables(v: int, k: int) -> tuple[np.ndarray, ...]:
    """T[c][byte, p]: colex contribution of byte c when p bits lie below it."""
    binom = _binom(v)
    tables = []
    for c in range((v + 7) // 8):
        t = np.zeros((256, k + 1), dtype=np.int64)
        for byte in range(256):
            for p in range(k + 1):
                cnt, total = p, 0
                for b in range(8):
                    x = 8 * c + b
                    if byte >> b & 1 and x < v:
                        cnt += 1
                        if cnt <= k:
                            total += binom[x, cnt]
                t[byte, p] = total
        tables.append(t)
    return tuple(tables)


def unrank_all(v: int, k: int) -> np.ndarray:
    n = comb(v, k)
    idx = np.arange(n, dtype=np.int64)
    out = np.zeros(n, dtype=np.uint64)
    binom = _binom(v)
    for j in range(k, 0, -1):
        col = binom[:v, j]  # nondecreasing in the row index
        c = np.searchsorted(col, idx, side="right") - 1
        out |= np.left_shift(np.uint64(1), c.astype(np.uint64))
        idx = idx - col[c]
    return out


def rank_masks(masks: np.ndarray, v: int, k: int) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.uint64)
    out = np.zeros(masks.shape[0], dtype=np.int64)
    below = np.zeros(masks.shape[0], dtype=np.int64)
    for c, table in enumerate(_byte_tables(v, k)):
        byte = ((masks >> np.uint64(8 * c)) & np.uint64(255)).astype(np.intp)
        out += table[byte, below]
        below += np.bitwise_count(byte.astype(np.uint8))
    return out


def _neighbor_pairs(v: int):
    for x in range(v):
        for y in range(v):
            if x != y:
                yield np.uint64(1 << x), np.uint64(1 << y)


def bfs_distances(v: int, k: int, seeds: np.ndarray) -> np.ndarray:
    n = comb(v, k)
    dist = np.full(n, 255, dtype=np.uint8)
    frontier = np.unique(np.asarray(seeds, dtype=np.int64))
    dist[frontier] = 0
    reached = frontier.size
    all_masks = unrank_all(v, k)
    level = 0
    while frontier.size and reached < n:
        level += 1
        masks = all_masks[frontier]
        found = []
        for bx, by in _neighbor_pairs(v):
            sel = masks[((masks & bx) != 0) & ((masks & by) == 0)]
            if sel.size:
                found.append(rank_masks(sel ^ bx | by, v, k))
        if not found:
            break
        cand = np.unique(np.concatenate(found))
        cand = cand[dist[cand] == 255]
        dist[cand] = level
        reached += cand.size
        frontier = cand
    return dist


def apply_masks(masks: np.ndarray, perm: np.ndarray) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.uint64)
    out = np.zeros_like(masks)
    for x, y in enumerate(np.asarray(perm, dtype=np.int64)):
        bit = (masks >> np.uint64(x)) & np.uint64(1)
        out |= bit << np.uint64(y)
    return out


def orbit_labels(v: int, k: int, perms: np.ndarray):
    n = comb(v, k)
    masks = unrank_all(v, k)
    src = np.arange(n, dtype=np.int64)
    rows, cols = [], []
    for perm in np.atleast_2d(np.asarray(perms, dtype=np.int64)):
        rows.append(src)
        cols.append(rank_masks(apply_masks(masks, perm), v, k))
    graph = coo_matrix(
        (np.ones(len(rows) * n, dtype=np.int8), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    )
    _, comp = connected_components(graph, directed=True, connection="weak")
    # renumber components by smallest rank
    first = np.full(comp.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, comp, src)
    order = np.argsort(first, kind="stable")
    relabel = np.empty_like(order)
    relabel[order] = np.arange(order.size)
    return relabel[comp].astype(np.int32), int(order.size)


def neighbor_profile(v: int, k: int, cells: np.ndarray, ncells: int):
    n = comb(v, k)
    cells = np.asarray(cells, dtype=np.int32)
    masks = unrank_all(v, k)
    counts = np.zeros((n, ncells), dtype=np.int64)
    src = np.arange(n, dtype=np.int64)
    for bx, by in _neighbor_pairs(v):
        sel = ((masks & bx) != 0) & ((masks & by) == 0)
        nbr = rank_masks(masks[sel] ^ bx | by, v, k)
        np.add.at(counts, (src[sel], cells[nbr]), 1)
    mat = np.zeros((ncells, ncells), dtype=np.int64)
    _, first = np.unique(cells, return_index=True)
    present = np.unique(cells)
    mat[present] = counts[first]
    diff = np.any(counts != mat[cells], axis=1)
    if not diff.any():
        return mat, None
    bad = int(np.argmax(diff))
    c = int(cells[bad])
    j = int(np.argmax(counts[bad] != mat[c]))
    return None, (bad, c, j, int(counts[bad, j]), int(mat[c, j]))
