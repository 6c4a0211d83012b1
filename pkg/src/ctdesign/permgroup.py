"""Permutation groups on {0, ..., v-1}.

Permutations are tuples of images, ``g[x]`` being the image of ``x``, and
products act on the right: ``mul(g, h)`` first applies g, then h.  Group
orders and membership come from a deterministic Schreier-Sims stabilizer
chain with base 0, 1, 2, ...; orbits on k-subsets go through the rank-space
kernels.
"""
from __future__ import annotations

import hashlib
import re
import threading
from collections import deque
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DesignError, GroupError, MemoryCapError
from .johnson import Design, check_subset, popcount, unrank

Permutation = tuple[int, ...]

DEFAULT_MAX_RANKS = 1 << 27


def identity(v: int) -> Permutation:
    return tuple(range(v))


def check_perm(p: Sequence[int], v: int | None = None) -> None:
    if v is not None and len(p) != v:
        raise GroupError(f"permutation of degree {len(p)}, expected {v}")
    if sorted(p) != list(range(len(p))):
        raise GroupError(f"not a permutation: {list(p)}")


def mul(g: Permutation, h: Permutation) -> Permutation:
    return tuple(h[x] for x in g)


def inverse(g: Permutation) -> Permutation:
    out = [0] * len(g)
    for x, y in enumerate(g):
        out[y] = x
    return tuple(out)


def is_identity(g: Permutation) -> bool:
    return all(x == y for x, y in enumerate(g))


def apply(g: Permutation, mask: int) -> int:
    """Image of a subset bitmask under g."""
    if mask >> len(g):
        raise DesignError(f"subset has points outside range({len(g)})")
    out = 0
    x = 0
    while mask:
        if mask & 1:
            out |= 1 << g[x]
        mask >>= 1
        x += 1
    return out


def from_cycles(text: str, v: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``(0 1 2)(3 4)``."""
    images = list(range(v))
    seen: set[int] = set()
    body = text.strip()
    if body in ("", "()"):
        return tuple(images)
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", body):
        raise GroupError(f"cannot parse cycles: {text!r}")
    for cyc in re.findall(r"\(([^)]*)\)", body):
        pts = [int(t) for t in re.split(r"[\s,]+", cyc.strip())]
        for x in pts:
            if not 0 <= x < v:
                raise GroupError(f"point {x} outside range({v})")
            if x in seen:
                raise GroupError(f"point {x} repeated in {text!r}")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return tuple(images)


def to_cycles(g: Permutation) -> str:
    seen = set()
    out = []
    for start in range(len(g)):
        if start in seen or g[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = g[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = g[x]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


class _Level:
    __slots__ = ("base", "gens", "trans")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[Permutation] = []
        # trans[pt] maps the base point to pt
        self.trans: dict[int, Permutation] = {}

    def rebuild(self, v: int) -> None:
        self.trans = {self.base: identity(v)}
        queue = deque([self.base])
        while queue:
            x = queue.popleft()
            u = self.trans[x]
            for s in self.gens:
                y = s[x]
                if y not in self.trans:
                    self.trans[y] = mul(u, s)
                    queue.append(y)


class StabilizerChain:
    """Deterministic Schreier-Sims with the fixed base 0, 1, ..., v-1."""

    def __init__(self, v: int, generators: Sequence[Permutation]):
        self.v = v
        self.levels = [_Level(b) for b in range(v)]
        self._build(list(generators))

    def _strip(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for i in range(start, self.v):
            lev = self.levels[i]
            b = g[lev.base]
            u = lev.trans.get(b)
            if u is None:
                return g, i
            g = mul(g, inverse(u))
        return g, self.v

    def _build(self, gens: list[Permutation]) -> None:
        v = self.v
        for g in gens:
            if is_identity(g):
                continue
            i = next(x for x in range(v) if g[x] != x)
            for lev in self.levels[: i + 1]:
                lev.gens.append(g)
        for lev in self.levels:
            lev.rebuild(v)
        i = v - 1
        while i >= 0:
            lev = self.levels[i]
            restart = False
            for b, u in list(lev.trans.items()):
                for s in lev.gens:
                    us = mul(u, s)
                    if us == lev.trans[s[b]]:
                        continue
                    h = mul(us, inverse(lev.trans[s[b]]))
                    h, j = self._strip(h, i + 1)
                    if j < v or not is_identity(h):
                        # h fixes base points < j; add it at levels i+1..j
                        for lev2 in self.levels[i + 1 : j + 1]:
                            lev2.gens.append(h)
                            lev2.rebuild(v)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        out = 1
        for lev in self.levels:
            out *= len(lev.trans)
        return out

    def contains(self, g: Permutation) -> bool:
        if len(g) != self.v:
            return False
        h, j = self._strip(tuple(g))
        return j == self.v and is_identity(h)

    def stabilizer_generators(self, depth: int) -> list[Permutation]:
        """Strong generators of the pointwise stabilizer of 0..depth-1."""
        if depth >= self.v:
            return []
        return list(self.levels[depth].gens)


class PermGroup:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(self, v: int, generators: Iterable[Sequence[int]], name: str = ""):
        gens = [tuple(int(x) for x in g) for g in generators]
        if not gens:
            gens = [identity(v)]
        for g in gens:
            check_perm(g, v)
        self.v = v
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self._chain: StabilizerChain | None = None
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} of degree {self.v} with {len(self.generators)} generators>"

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.v, self.generators)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Sequence[int]) -> bool:
        return self.chain.contains(tuple(g))

    def gen_array(self) -> np.ndarray:
        return np.array(self.generators, dtype=np.int64)

    def point_orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for x in range(self.v):
            if x in seen:
                continue
            orb = [x]
            seen.add(x)
            for y in orb:
                for g in self.generators:
                    z = g[y]
                    if z not in seen:
                        seen.add(z)
                        orb.append(z)
            out.append(sorted(orb))
        return out

    def point_stabilizer(self, x: int) -> "PermGroup":
        """Generators of the stabilizer of point x (same degree)."""
        swap = list(range(self.v))
        swap[0], swap[x] = swap[x], swap[0]
        t = tuple(swap)
        conj = PermGroup(self.v, [mul(mul(t, g), t) for g in self.generators])
        gens = conj.chain.stabilizer_generators(1)
        name = f"{self.name}_{x}" if self.name else ""
        return PermGroup(self.v, [mul(mul(t, g), t) for g in gens] or [identity(self.v)], name)

    def restrict(self, points_kept: Sequence[int], name: str = "") -> "PermGroup":
        """Action on an invariant subset, relabelled 0..len-1 in the given order."""
        index = {x: i for i, x in enumerate(points_kept)}
        gens = []
        for g in self.generators:
            try:
                gens.append(tuple(index[g[x]] for x in points_kept))
            except KeyError:
                raise GroupError("subset is not invariant under the group") from None
        return PermGroup(len(points_kept), gens, name)

    def preserves(self, d: Design) -> bool:
        if d.v != self.v:
            return False
        blocks = d.block_set
        return all(apply(g, b) in blocks for g in self.generators for b in d.blocks)

    def orbit_of_subset(self, mask: int) -> list[int]:
        orb = [mask]
        seen = {mask}
        for m in orb:
            for g in self.generators:
                im = apply(g, m)
                if im not in seen:
                    seen.add(im)
                    orb.append(im)
        return orb


@dataclass
class OrbitPartition:
    """Orbits of a group on the k-subsets, as arrays of ranks."""

    v: int
    k: int
    labels: np.ndarray
    cells: list[np.ndarray]

    @property
    def sizes(self) -> list[int]:
        return [int(c.size) for c in self.cells]

    def __len__(self) -> int:
        return len(self.cells)

    def representative(self, i: int) -> int:
        return unrank(int(self.cells[i][0]), self.v, self.k)


def check_cap(v: int, k: int, max_ranks: int | None) -> int:
    n = comb(v, k)
    cap = DEFAULT_MAX_RANKS if max_ranks is None else max_ranks
    if n > cap:
        raise MemoryCapError(n, cap)
    return n


def orbits_on_ksubsets(G: PermGroup, k: int, max_ranks: int | None = None) -> OrbitPartition:
    if not 1 <= k <= G.v:
        raise DesignError(f"k={k} out of range for degree {G.v}")
    check_cap(G.v, k, max_ranks)
    labels, n = kernels.impl.orbit_labels(G.v, k, G.gen_array())
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(n + 1))
    cells = [order[bounds[i] : bounds[i + 1]] for i in range(n)]
    return OrbitPartition(G.v, k, labels, cells)


def group_order(G: PermGroup) -> int:
    return G.order()


def _minimal_block(G: PermGroup, a: int, b: int) -> list[int]:
    """Finest G-invariant partition with a and b in one class (union-find closure)."""
    parent = list(range(G.v))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque([(a, b)])
    parent[find(b)] = find(a)
    while queue:
        x, y = queue.popleft()
        for g in G.generators:
            rx, ry = find(g[x]), find(g[y])
            if rx != ry:
                parent[ry] = rx
                queue.append((g[x], g[y]))
    return [find(x) for x in range(G.v)]


def _classes(roots: list[int]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for x, r in enumerate(roots):
        groups.setdefault(r, []).append(x)
    return sorted(groups.values())


def ordered_pair_orbits(G: PermGroup) -> int:
    v = G.v
    label = [-1] * (v * v)
    count = 0
    for start in range(v * v):
        x, y = divmod(start, v)
        if x == y or label[start] >= 0:
            continue
        label[start] = count
        stack = [start]
        while stack:
            p = stack.pop()
            px, py = divmod(p, v)
            for g in G.generators:
                q = g[px] * v + g[py]
                if label[q] < 0:
                    label[q] = count
                    stack.append(q)
        count += 1
    return count


@dataclass
class ActionClass:
    label: str
    orbits: list[list[int]] | None = None
    blocks: list[list[int]] | None = None
    pair_orbits: int | None = None


INTRANSITIVE = "intransitive"
IMPRIMITIVE = "transitive-imprimitive"
PRIMITIVE = "primitive-not-2-transitive"
TWO_TRANSITIVE = "2-transitive"


def classify_action(G: PermGroup) -> ActionClass:
    """Intransitive / imprimitive / primitive / 2-transitive, with a witness."""
    orbs = G.point_orbits()
    if len(orbs) > 1:
        return ActionClass(INTRANSITIVE, orbits=orbs)
    for y in range(1, G.v):
        system = _classes(_minimal_block(G, 0, y))
        if len(system) > 1:
            return ActionClass(IMPRIMITIVE, blocks=system)
    n = ordered_pair_orbits(G)
    return ActionClass(TWO_TRANSITIVE if n <= 1 else PRIMITIVE, pair_orbits=n)


def flag_orbit_check(G: PermGroup, d: Design, a: int, max_flags: int = 5_000_000) -> bool:
    """Is the setwise stabilizer of block ``a`` transitive on a x (X minus a)?

    The G-orbit of one flag (a, x, y) is enumerated; the flags in it whose
    subset is ``a`` form exactly the G_a-orbit of (x, y).
    """
    if a not in d:
        raise DesignError("subset is not a block of the design")
    v = G.v
    inside = [x for x in range(v) if a >> x & 1]
    outside = [x for x in range(v) if not a >> x & 1]
    if not outside:
        return True
    start = (a, inside[0], outside[0])
    seen = {start}
    queue = deque([start])
    hits = 0
    while queue:
        m, x, y = queue.popleft()
        if m == a:
            hits += 1
        for g in G.generators:
            f = (apply(g, m), g[x], g[y])
            if f not in seen:
                seen.add(f)
                queue.append(f)
                if len(seen) > max_flags:
                    raise MemoryCapError(len(seen), max_flags)
    return hits == len(inside) * len(outside)


# ---------------------------------------------------------------- group files

def parse_group(text: str, name: str = "") -> PermGroup:
    """Read the plain-text group format: ``degree v`` then one generator per line."""
    v = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if v is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise GroupError(f"expected 'degree v', got {line!r}")
            v = int(m.group(1))
            continue
        gens.append(from_cycles(line, v))
    if v is None:
        raise GroupError("missing 'degree' line")
    return PermGroup(v, gens, name)


def header_fields(text: str) -> dict[str, str]:
    out = {}
    for raw in text.splitlines():
        m = re.match(r"#\s*([A-Za-z_]+)\s*:\s*(.*)$", raw.strip())
        if m:
            out[m.group(1).lower()] = m.group(2).strip()
    return out


def generator_digest(G: PermGroup) -> str:
    body = "\n".join(to_cycles(g) for g in G.generators)
    return hashlib.sha256(f"degree {G.v}\n{body}\n".encode()).hexdigest()


def format_group(G: PermGroup, header: dict[str, str] | None = None) -> str:
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    lines.append(f"degree {G.v}")
    lines.extend(to_cycles(g) for g in G.generators)
    return "\n".join(lines) + "\n"


def read_group(path: str | Path) -> PermGroup:
    path = Path(path)
    text = path.read_text()
    return parse_group(text, header_fields(text).get("name", path.stem))


def write_group(G: PermGroup, path: str | Path, header: dict[str, str] | None = None) -> None:
    Path(path).write_text(format_group(G, header))


# ------------------------------------------------------------ small families

def symmetric_group(points_or_v: int | Sequence[int], v: int | None = None) -> PermGroup:
    """Sym of the given points (or of range(v)), fixing everything else."""
    pts = list(range(points_or_v)) if isinstance(points_or_v, int) else list(points_or_v)
    deg = v if v is not None else (max(pts) + 1 if pts else 0)
    gens = []
    if len(pts) >= 2:
        g = list(range(deg))
        g[pts[0]], g[pts[1]] = pts[1], pts[0]
        gens.append(tuple(g))
    if len(pts) >= 3:
        g = list(range(deg))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            g[a] = b
        gens.append(tuple(g))
    return PermGroup(deg, gens, f"Sym({len(pts)})")


def direct_product(*groups: PermGroup, v: int) -> PermGroup:
    gens = [g for G in groups for g in G.generators]
    return PermGroup(v, gens)


def young_subgroup(v: int, Y: Iterable[int]) -> PermGroup:
    """Sym(Y) x Sym(X minus Y)."""
    Y = sorted(set(Y))
    rest = [x for x in range(v) if x not in Y]
    G = direct_product(symmetric_group(Y, v), symmetric_group(rest, v), v=v)
    G.name = f"Sym({len(Y)})xSym({len(rest)})"
    return G


def wreath_product(a: int, b: int) -> PermGroup:
    """S_a wr S_b in its imprimitive action; block i is {i*a, ..., i*a+a-1}."""
    v = a * b
    gens = list(symmetric_group(range(a), v).generators)
    if b >= 2:
        g = list(range(v))
        for t in range(a):
            g[t], g[a + t] = a + t, t
        gens.append(tuple(g))
    if b >= 3:
        gens.append(tuple((x + a) % v for x in range(v)))
    return PermGroup(v, gens, f"S{a}wrS{b}")
