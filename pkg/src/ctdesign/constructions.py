"""Designs and groups: partition examples, finite geometries, Witt designs.

Point labellings are fixed so block lists are byte-stable: PG(2, q) points
are normalised homogeneous coordinates in lexicographic order, PG(1, q) is
``[inf, 0, 1, 2, ...]`` in field-element order, and the Mathieu-family
generators live in ``data/groups``.
"""
from __future__ import annotations

import hashlib
import itertools
from functools import lru_cache
from importlib import resources
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DesignError, GroupError
from .gf import field
from .johnson import Design, full_set, popcount, points, subset
from .permgroup import PermGroup, generator_digest, header_fields, parse_group

PG_ORDERS = (2, 3, 4, 5, 7, 8, 9)


def uniform_partition(a: int, b: int) -> list[list[int]]:
    """b consecutive cells of size a covering range(a*b)."""
    return [list(range(i * a, (i + 1) * a)) for i in range(b)]


def _k_subsets(pool: Sequence[int], k: int) -> Iterable[int]:
    for c in itertools.combinations(pool, k):
        yield subset(c)


# ---------------------------------------------------------------- partitions

def example1(v: int, k: int, Y: Iterable[int]) -> Design:
    """k-sets meeting Y maximally: all k-sets containing Y, or all k-subsets of Y."""
    Y = sorted(set(Y))
    if not Y or len(Y) >= v or Y[0] < 0 or Y[-1] >= v:
        raise DesignError("Y must be a non-empty proper subset of range(v)")
    if not 1 <= k <= v:
        raise DesignError(f"k={k} out of range")
    if k >= len(Y):
        rest = [x for x in range(v) if x not in Y]
        base = subset(Y)
        blocks = [base | m for m in _k_subsets(rest, k - len(Y))]
    else:
        blocks = list(_k_subsets(Y, k))
    return Design(v, k, tuple(blocks), f"example1(v={v},k={k},|Y|={len(Y)})")


def example2(a: int, k: int) -> Design:
    """All k-subsets lying inside one of two cells of size a."""
    if not 1 <= k <= a:
        raise DesignError("need 1 <= k <= a")
    cells = uniform_partition(a, 2)
    blocks = [m for Y in cells for m in _k_subsets(Y, k)]
    return Design(2 * a, k, tuple(blocks), f"example2(a={a},k={k})")


def example3(b: int, k: int) -> Design:
    """Partial transversals of size k of b pairs."""
    if not 1 <= k <= b:
        raise DesignError("need 1 <= k <= b")
    return _transversals(2, b, k, "example3")


def example4(a: int, b: int) -> Design:
    """Triples meeting each of b cells of size a in at most one point."""
    if a < 3 or b < 3:
        raise DesignError("need a, b >= 3")
    return _transversals(a, b, 3, "example4")


def example5(a: int, b: int) -> Design:
    """Pairs meeting each of b cells of size a in at most one point."""
    if a < 1 or b < 2:
        raise DesignError("need a >= 1 and b >= 2")
    return _transversals(a, b, 2, "example5")


def _transversals(a: int, b: int, k: int, tag: str) -> Design:
    cells = uniform_partition(a, b)
    blocks = []
    for chosen in itertools.combinations(range(b), k):
        for pts in itertools.product(*(cells[i] for i in chosen)):
            blocks.append(subset(pts))
    label = f"{tag}(b={b},k={k})" if tag == "example3" else f"{tag}(a={a},b={b})"
    return Design(a * b, k, tuple(blocks), label)


def disjoint_blocks(v: int, k: int) -> Design:
    """v/k pairwise disjoint k-sets partitioning range(v)."""
    if k < 1 or v % k:
        raise DesignError("k must divide v")
    return Design(v, k, tuple(subset(Y) for Y in uniform_partition(k, v // k)), f"disjoint(v={v},k={k})")


# ------------------------------------------------------------ finite geometry

def _normalise(vec: Sequence[int], F) -> tuple[int, ...]:
    lead = next(c for c in vec if c)
    s = int(F.inv[lead])
    return tuple(int(F.mul[s, c]) for c in vec)


@lru_cache(maxsize=None)
def pg_points(q: int, dim: int = 2) -> tuple[tuple[int, ...], ...]:
    """Points of PG(dim, q) as normalised coordinate vectors, sorted."""
    F = field(q)
    pts = set()
    for vec in itertools.product(range(q), repeat=dim + 1):
        if any(vec):
            pts.add(_normalise(vec, F))
    return tuple(sorted(pts))


def _dot(u, w, F) -> int:
    s = 0
    for a, b in zip(u, w):
        s = int(F.add[s, F.mul[a, b]])
    return s


def _matrix_perm(M, pts, index, F) -> tuple[int, ...]:
    n = len(M)
    out = []
    for P in pts:
        img = []
        for j in range(n):
            s = 0
            for i in range(n):
                s = int(F.add[s, F.mul[P[i], M[i][j]]])
            img.append(s)
        out.append(index[_normalise(img, F)])
    return tuple(out)


def pgl_group(q: int, dim: int = 2, semilinear: bool = False) -> PermGroup:
    """PGL(dim+1, q) on the points of PG(dim, q), from elementary matrices.

    Transvections I + c*E_ij for c in an additive basis of GF(q), plus a
    diagonal matrix with a primitive element; ``semilinear`` adds the
    Frobenius map for PGammaL.
    """
    F = field(q)
    n = dim + 1
    pts = pg_points(q, dim)
    index = {P: i for i, P in enumerate(pts)}
    basis = [F.power(i) for i in range(F.a)]
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for c in basis:
                M = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
                M[i][j] = c
                gens.append(_matrix_perm(M, pts, index, F))
    D = [[0] * n for _ in range(n)]
    for r in range(n):
        D[r][r] = 1
    D[0][0] = F.generator
    gens.append(_matrix_perm(D, pts, index, F))
    if semilinear and F.a > 1:
        gens.append(tuple(index[_normalise([F.frobenius(c) for c in P], F)] for P in pts))
    label = ("PGammaL" if semilinear and F.a > 1 else "PGL") + f"({n},{q})"
    return PermGroup(len(pts), [g for g in dict.fromkeys(gens)], label)


def pg_lines(q: int) -> tuple[Design, PermGroup]:
    """Lines of PG(2, q) in J(q^2+q+1, q+1) and PGL(3, q) acting on them."""
    if q not in PG_ORDERS:
        raise DesignError(f"q must be one of {PG_ORDERS}")
    F = field(q)
    pts = pg_points(q)
    blocks = []
    for L in pts:  # dual coordinates
        blocks.append(subset(i for i, P in enumerate(pts) if _dot(L, P, F) == 0))
    return Design(len(pts), q + 1, tuple(blocks), f"PG(2,{q}) lines"), pgl_group(q)


def pgl_order(n: int, q: int) -> int:
    """|PGL(n, q)|."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out // (q - 1)


def ag_lines(q: int = 4) -> Design:
    """Lines of the affine plane AG(2, q); point (x, y) is labelled x*q + y."""
    if q != 4:
        raise DesignError("only AG(2,4) is bundled")
    F = field(q)
    lines = set()
    dirs = [(0, 1)] + [(1, m) for m in range(q)]
    for px, py in itertools.product(range(q), repeat=2):
        for dx, dy in dirs:
            pts = []
            for t in range(q):
                x = int(F.add[px, F.mul[t, dx]])
                y = int(F.add[py, F.mul[t, dy]])
                pts.append(x * q + y)
            lines.add(subset(pts))
    return Design(q * q, q, tuple(lines), f"AG(2,{q}) lines")


QR11 = (1, 3, 4, 5, 9)


def biplane11() -> Design:
    """2-(11,5,2): translates of the quadratic residues mod 11."""
    blocks = [subset((i + r) % 11 for r in QR11) for i in range(11)]
    return Design(11, 5, tuple(blocks), "biplane 2-(11,5,2)")


def extended_biplane12() -> Design:
    """3-(12,6,2): biplane blocks plus point 11, and their complements in range(11)."""
    bp = biplane11()
    inf = 1 << 11
    full11 = full_set(11)
    blocks = [b | inf for b in bp.blocks] + [full11 & ~b for b in bp.blocks]
    return Design(12, 6, tuple(blocks), "3-(12,6,2)")


# --------------------------------------------------------- projective line

def _pl_index(q: int):
    """Point labels on PG(1, q): 0 = inf, 1 + x = field element x."""
    return lambda x: 0 if x is None else x + 1


def pgl2_group(q: int, semilinear: bool = False) -> PermGroup:
    """PGL(2, q) (or PGammaL) on the q+1 points of the projective line."""
    F = field(q)
    idx = _pl_index(q)
    elems: list = [None] + list(range(q))

    def perm(f):
        return tuple(idx(f(x)) for x in elems)

    def translate(x):
        return None if x is None else int(F.add[x, 1])

    def scale(x):
        return None if x is None else int(F.mul[x, F.generator])

    def invert(x):
        if x is None:
            return 0
        return None if x == 0 else int(F.inv[x])

    # scaling conjugates x+1 to every translation x+c
    gens = [perm(translate), perm(scale), perm(invert)]
    if semilinear and F.a > 1:
        gens.append(perm(lambda x: None if x is None else F.frobenius(x)))
    name = ("PGammaL" if semilinear and F.a > 1 else "PGL") + f"(2,{q})"
    return PermGroup(q + 1, list(dict.fromkeys(gens)), name)


def inversive_plane4() -> Design:
    """Miquelian inversive plane of order 4: 3-(17,5,1) on PG(1,16).

    Circles are the PGL(2,16)-images of the subline GF(4) + {inf}.
    """
    F = field(16)
    idx = _pl_index(16)
    base = subset([idx(None)] + [idx(x) for x in F.subfield(4)])
    G = pgl2_group(16)
    circles = G.orbit_of_subset(base)
    return Design(17, 5, tuple(circles), "inversive plane 3-(17,5,1)")


# ------------------------------------------------------------- bundled data

def _data_text(rel: str) -> str:
    return resources.files("ctdesign").joinpath("data", rel).read_text()


BUNDLED_GROUPS = ("m11", "m11_12", "m12", "l2_11", "m22", "m23", "m24", "pgl3_2", "pgl3_3", "pgaml2_16")


@lru_cache(maxsize=None)
def bundled_group(name: str) -> PermGroup:
    """Load a shipped generator file, checking its digest and recorded order."""
    if name not in BUNDLED_GROUPS:
        raise GroupError(f"unknown bundled group {name!r}; choose from {BUNDLED_GROUPS}")
    text = _data_text(f"groups/{name}.txt")
    meta = header_fields(text)
    G = parse_group(text, meta.get("name", name))
    if "sha256" in meta and generator_digest(G) != meta["sha256"]:
        raise GroupError(f"checksum mismatch in bundled group {name}")
    if "order" in meta and G.order() != int(meta["order"]):
        raise GroupError(f"{name}: stabilizer chain order {G.order()} != recorded {meta['order']}")
    return G


@lru_cache(maxsize=None)
def golay_generator_rows() -> tuple[int, ...]:
    rows = []
    for line in _data_text("golay24.txt").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(int(line[::-1], 2))  # column j -> bit j
    if len(rows) != 12:
        raise ValueError("Golay generator matrix must have 12 rows")
    return tuple(rows)


@lru_cache(maxsize=None)
def golay_code() -> tuple[int, ...]:
    """All 4096 codewords of the extended binary Golay code, as 24-bit masks."""
    words = [0]
    for row in golay_generator_rows():
        words += [w ^ row for w in words]
    return tuple(sorted(set(words)))


def derive(d: Design, x: int) -> Design:
    """Blocks through point x with x removed; points above x shift down by one."""
    if not 0 <= x < d.v:
        raise DesignError(f"derivation point {x} out of range")
    low = (1 << x) - 1
    blocks = []
    for b in d.blocks:
        if b >> x & 1:
            blocks.append((b & low) | ((b >> (x + 1)) << x))
    return Design(d.v - 1, d.k - 1, tuple(blocks))


WITT_POINTS = (12, 22, 23, 24)


@lru_cache(maxsize=None)
def witt(n: int) -> Design:
    """Witt designs S(5,8,24), S(4,7,23), S(3,6,22) and S(5,6,12)."""
    if n == 24:
        octads = [w for w in golay_code() if popcount(w) == 8]
        return Design(24, 8, tuple(octads), "Witt 5-(24,8,1)")
    if n == 23:
        return derive(witt(24), 23).with_name("Witt 4-(23,7,1)")
    if n == 22:
        return derive(witt(23), 22).with_name("Witt 3-(22,6,1)")
    if n == 12:
        meta = header_fields(_data_text("groups/m12.txt"))
        base = subset(int(x) for x in meta["base_hexad"].split())
        hexads = bundled_group("m12").orbit_of_subset(base)
        return Design(12, 6, tuple(hexads), "Witt 5-(12,6,1)")
    raise DesignError(f"n must be one of {WITT_POINTS}")


def coverage_counts(d: Design, t: int) -> dict[int, int]:
    """How many blocks contain each t-subset (only t-subsets with nonzero count)."""
    counts: dict[int, int] = {}
    for b in d.blocks:
        for c in itertools.combinations(points(b), t):
            m = subset(c)
            counts[m] = counts.get(m, 0) + 1
    return counts


def is_t_design(d: Design, t: int, lam: int | None = None) -> bool:
    counts = coverage_counts(d, t)
    if len(counts) != comb(d.v, t):
        return False
    values = set(counts.values())
    return len(values) == 1 and (lam is None or values == {lam})


# ---------------------------------------------------------- design file I/O

def format_design(d: Design, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    if d.name:
        lines.append(f"# name: {d.name}")
    lines.append(f"{d.v} {d.k} {len(d.blocks)}")
    lines.extend(" ".join(map(str, points(b))) for b in d.blocks)
    return "\n".join(lines) + "\n"


def parse_design(text: str, name: str = "") -> Design:
    header = None
    rows = []
    for raw in text.splitlines():
        if raw.strip().startswith("# name:") and not name:
            name = raw.split(":", 1)[1].strip()
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        nums = [int(t) for t in line.split()]
        if header is None:
            if len(nums) != 3:
                raise DesignError(f"expected header 'v k n', got {line!r}")
            header = nums
        else:
            rows.append(nums)
    if header is None:
        raise DesignError("empty design file")
    v, k, n = header
    if len(rows) != n:
        raise DesignError(f"header says {n} blocks, found {len(rows)}")
    for r in rows:
        if len(r) != k:
            raise DesignError(f"block {r} does not have {k} points")
    return Design(v, k, tuple(subset(r, v) for r in rows), name)


def read_design(path: str | Path) -> Design:
    path = Path(path)
    return parse_design(path.read_text(), "")


def write_design(d: Design, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_design(d, comment))


def design_digest(d: Design) -> str:
    return hashlib.sha256(format_design(d.with_name("")).encode()).hexdigest()
