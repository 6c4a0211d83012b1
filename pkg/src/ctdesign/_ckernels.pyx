# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops over the rank space of J(v, k).

Every function here has a numpy twin in ``_pykernels`` with the same
signature and identical results.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, int32_t, uint8_t

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


def binom_table(int v):
    """C(n, j) for 0 <= n <= v, 0 <= j <= v + 1, as int64."""
    cdef cnp.ndarray[int64_t, ndim=2] t = np.zeros((v + 1, v + 2), dtype=np.int64)
    cdef int n, j
    for n in range(v + 1):
        t[n, 0] = 1
        for j in range(1, n + 1):
            t[n, j] = t[n - 1, j - 1] + (t[n - 1, j] if j <= n - 1 else 0)
    return t


cdef inline int64_t _rank(uint64_t m, int64_t[:, ::1] binom) nogil:
    cdef int64_t r = 0
    cdef int j = 0
    cdef int x
    while m:
        x = __builtin_ctzll(m)
        j += 1
        r += binom[x, j]
        m &= m - 1
    return r


cdef inline uint64_t _apply(uint64_t m, int64_t[::1] perm) nogil:
    cdef uint64_t out = 0
    cdef int x
    while m:
        x = __builtin_ctzll(m)
        out |= (<uint64_t>1) << perm[x]
        m &= m - 1
    return out


def unrank_all(int v, int k):
    """Bitmasks of all k-subsets of range(v), indexed by colex rank."""
    cdef int64_t n = np.asarray(binom_table(v))[v, k]
    cdef cnp.ndarray[uint64_t, ndim=1] out = np.empty(n, dtype=np.uint64)
    cdef uint64_t m, low, ripple, ones
    cdef int64_t i
    if k == 0:
        out[0] = 0
        return out
    m = ((<uint64_t>1) << k) - 1
    # Gosper's hack enumerates equal-popcount words in increasing order == colex
    for i in range(n):
        out[i] = m
        if i + 1 < n:
            low = m & (~m + 1)
            ripple = m + low
            ones = ((m ^ ripple) >> 2) // low
            m = ripple | ones
    return out


def rank_masks(cnp.ndarray masks, int v, int k):
    cdef uint64_t[::1] ms = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef int64_t[:, ::1] binom = binom_table(v)
    cdef Py_ssize_t i, n = ms.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _rank(ms[i], binom)
    return out


def bfs_distances(int v, int k, cnp.ndarray seeds):
    """Multi-source BFS in J(v, k); returns uint8 distance per rank."""
    cdef int64_t[:, ::1] binom = binom_table(v)
    cdef int64_t n = binom[v, k]
    cdef uint64_t[::1] masks = unrank_all(v, k)
    cdef cnp.ndarray[uint8_t, ndim=1] dist_arr = np.full(n, 255, dtype=np.uint8)
    cdef uint8_t[::1] dist = dist_arr
    cdef cnp.ndarray[int64_t, ndim=1] queue_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] queue = queue_arr
    cdef int64_t[::1] sd = np.ascontiguousarray(seeds, dtype=np.int64)
    cdef int64_t head = 0, tail = 0, r, nr, i
    cdef uint64_t m, full = ((<uint64_t>1) << v) - 1 if v < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    cdef uint64_t ins, outs, bi, bo, base
    cdef uint8_t d
    with nogil:
        for i in range(sd.shape[0]):
            r = sd[i]
            if dist[r] != 0:
                dist[r] = 0
                queue[tail] = r
                tail += 1
        while head < tail and tail < n:
            r = queue[head]
            head += 1
            m = masks[r]
            d = dist[r] + 1
            ins = m
            while ins:
                bi = ins & (~ins + 1)
                ins ^= bi
                base = m ^ bi
                outs = full & ~m
                while outs:
                    bo = outs & (~outs + 1)
                    outs ^= bo
                    nr = _rank(base | bo, binom)
                    if dist[nr] == 255:
                        dist[nr] = d
                        queue[tail] = nr
                        tail += 1
    return dist_arr


def orbit_labels(int v, int k, cnp.ndarray perms):
    """Label each rank by its orbit under the permutations (rows of ``perms``).

    Orbits are numbered in order of their smallest rank.
    """
    cdef int64_t[:, ::1] binom = binom_table(v)
    cdef int64_t n = binom[v, k]
    cdef uint64_t[::1] masks = unrank_all(v, k)
    cdef int64_t[:, ::1] gens = np.ascontiguousarray(perms, dtype=np.int64)
    cdef Py_ssize_t ng = gens.shape[0]
    cdef cnp.ndarray[int32_t, ndim=1] lab_arr = np.full(n, -1, dtype=np.int32)
    cdef int32_t[::1] lab = lab_arr
    cdef cnp.ndarray[int64_t, ndim=1] queue_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] queue = queue_arr
    cdef int64_t start, head, tail, r, nr
    cdef int32_t current = 0
    cdef Py_ssize_t g
    with nogil:
        for start in range(n):
            if lab[start] >= 0:
                continue
            lab[start] = current
            head = 0
            tail = 1
            queue[0] = start
            while head < tail:
                r = queue[head]
                head += 1
                for g in range(ng):
                    nr = _rank(_apply(masks[r], gens[g]), binom)
                    if lab[nr] < 0:
                        lab[nr] = current
                        queue[tail] = nr
                        tail += 1
            current += 1
    return lab_arr, int(current)


def neighbor_profile(int v, int k, cnp.ndarray cells, int ncells):
    """Check that the neighbour-count row of every vertex depends only on its cell.

    Returns (matrix, None) when equitable, ``matrix[i, j]`` being the number of
    neighbours in cell j of any vertex in cell i.  Otherwise returns
    (None, (rank, i, j, count, expected)) for the first offending vertex.
    """
    cdef int64_t[:, ::1] binom = binom_table(v)
    cdef int64_t n = binom[v, k]
    cdef uint64_t[::1] masks = unrank_all(v, k)
    cdef int32_t[::1] cell = np.ascontiguousarray(cells, dtype=np.int32)
    cdef cnp.ndarray[int64_t, ndim=2] mat_arr = np.zeros((ncells, ncells), dtype=np.int64)
    cdef int64_t[:, ::1] mat = mat_arr
    cdef cnp.ndarray[uint8_t, ndim=1] seen_arr = np.zeros(ncells, dtype=np.uint8)
    cdef uint8_t[::1] seen = seen_arr
    cdef cnp.ndarray[int64_t, ndim=1] row_arr = np.zeros(ncells, dtype=np.int64)
    cdef int64_t[::1] row = row_arr
    cdef uint64_t m, ins, outs, bi, bo, base
    cdef uint64_t full = ((<uint64_t>1) << v) - 1 if v < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    cdef int64_t r, bad = -1
    cdef int c, j, bad_j = -1
    with nogil:
        for r in range(n):
            for j in range(ncells):
                row[j] = 0
            m = masks[r]
            ins = m
            while ins:
                bi = ins & (~ins + 1)
                ins ^= bi
                base = m ^ bi
                outs = full & ~m
                while outs:
                    bo = outs & (~outs + 1)
                    outs ^= bo
                    row[cell[_rank(base | bo, binom)]] += 1
            c = cell[r]
            if not seen[c]:
                seen[c] = 1
                for j in range(ncells):
                    mat[c, j] = row[j]
            else:
                for j in range(ncells):
                    if row[j] != mat[c, j]:
                        bad = r
                        bad_j = j
                        break
                if bad >= 0:
                    break
    if bad >= 0:
        return None, (int(bad), int(cell[bad]), bad_j, int(row[bad_j]), int(mat[cell[bad], bad_j]))
    return mat_arr, None


def apply_masks(cnp.ndarray masks, cnp.ndarray perm):
    cdef uint64_t[::1] ms = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef int64_t[::1] p = np.ascontiguousarray(perm, dtype=np.int64)
    cdef Py_ssize_t i, n = ms.shape[0]
    cdef cnp.ndarray[uint64_t, ndim=1] out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _apply(ms[i], p)
    return out
