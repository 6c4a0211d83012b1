"""Regenerate the bundled generator files under src/ctdesign/data.

Run from the repository root:  python tools/make_group_data.py

Mathieu groups on 22-24 points use the standard generators (points shifted
to 0-based) and the Golay code is the extended quadratic-residue code in
that labelling.  The M12 family is built in the labelling of the extended
11-point biplane: M11 (transitive on 12 points) is the automorphism group
of the 3-(12,6,2) design, found here by a small backtrack search, and M12
adds one automorphism of the hexad system.
"""
from __future__ import annotations

import re
from pathlib import Path

from ctdesign import constructions as cons
from ctdesign.johnson import Design, popcount, points, unrank
from ctdesign.permgroup import (
    PermGroup,
    apply,
    format_group,
    from_cycles,
    generator_digest,
    orbits_on_ksubsets,
)

DATA = Path(__file__).resolve().parents[1] / "src" / "ctdesign" / "data"
VERSION = "1"


def gap_perm(text: str, v: int):
    return from_cycles(re.sub(r"\d+", lambda m: str(int(m.group()) - 1), text.replace(",", " ")), v)


def prune_generators(G: PermGroup) -> PermGroup:
    target = G.order()
    kept: list = []
    for g in G.generators:
        if PermGroup(G.v, kept + [g]).order() > (PermGroup(G.v, kept).order() if kept else 1):
            kept.append(g)
        if kept and PermGroup(G.v, kept).order() == target:
            break
    return PermGroup(G.v, kept, G.name)


def automorphisms(d: Design):
    """Backtrack over point images; yields block-preserving permutations."""
    v = d.v
    blocks = list(d.blocks)
    block_set = d.block_set
    img = [-1] * v
    used = [False] * v

    def consistent(i):
        dom = (1 << (i + 1)) - 1
        image_dom = 0
        for x in range(i + 1):
            image_dom |= 1 << img[x]
        for b in blocks:
            part = b & dom
            if not part:
                continue
            pim = 0
            for x in points(part):
                pim |= 1 << img[x]
            if not any((c & image_dom) == pim for c in blocks):
                return False
        return True

    def rec(i):
        if i == v:
            g = tuple(img)
            if all(apply(g, b) in block_set for b in blocks):
                yield g
            return
        for y in range(v):
            if used[y]:
                continue
            img[i] = y
            used[y] = True
            if consistent(i):
                yield from rec(i + 1)
            used[y] = False
            img[i] = -1

    yield from rec(0)


def group_from_search(d: Design, start: PermGroup | None = None, limit: int | None = None) -> PermGroup:
    gens = list(start.generators) if start else []
    G = PermGroup(d.v, gens)
    for g in automorphisms(d):
        if g not in G:
            gens.append(g)
            G = PermGroup(d.v, gens)
            if limit and G.order() >= limit:
                break
    return G


def write(name: str, G: PermGroup, title: str, provenance: str, extra: dict | None = None):
    header = {
        "name": title,
        "version": VERSION,
        "provenance": provenance,
        "order": str(G.order()),
    }
    header.update(extra or {})
    header["sha256"] = generator_digest(G)
    (DATA / "groups" / f"{name}.txt").write_text(format_group(G, header))
    print(f"{name}: order {G.order()}, {len(G.generators)} generators")


def main():
    (DATA / "groups").mkdir(parents=True, exist_ok=True)

    # M12 family in the extended-biplane labelling (point 11 = infinity)
    ext = cons.extended_biplane12()
    m11t = prune_generators(group_from_search(ext))
    assert m11t.order() == 7920 and len(m11t.point_orbits()) == 1
    l2_11 = prune_generators(m11t.point_stabilizer(11).restrict(range(11)))
    assert l2_11.order() == 660 and l2_11.preserves(cons.biplane11())
    orbs = orbits_on_ksubsets(m11t, 6)
    assert sorted(orbs.sizes) == [22, 110, 792], orbs.sizes


    hexads = [unrank(int(r), 12, 6) for c in orbs.cells if c.size in (22, 110) for r in c]
    steiner = Design(12, 6, tuple(hexads))
    assert cons.is_t_design(steiner, 5, 1)
    m12 = prune_generators(group_from_search(steiner, start=m11t, limit=95040))
    assert m12.order() == 95040
    m11 = prune_generators(m12.point_stabilizer(11).restrict(range(11)))
    assert m11.order() == 7920
    base = " ".join(map(str, points(steiner.blocks[0])))
    prov = "automorphisms of the 3-(12,6,2) extension of the QR-mod-11 biplane; point 11 is infinity"
    write("m11_12", m11t, "M11 on 12 points", prov)
    write("l2_11", l2_11, "L2(11) on 11 points", "stabilizer of point 11 in M11 on 12 points; preserves the QR-mod-11 biplane")
    write("m12", m12, "M12", "M11 on 12 points plus one automorphism of its 22+110 hexad system",
          {"base_hexad": base})
    write("m11", m11, "M11", "stabilizer of point 11 in the bundled M12, on points 0..10")

    # M24 family, standard generators
    m24 = PermGroup(24, [
        gap_perm("(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)", 24),
        gap_perm("(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)", 24),
        gap_perm("(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)", 24),
    ], "M24")
    assert m24.order() == 244823040
    rows = golay_rows(m24)
    (DATA / "golay24.txt").write_text(
        "# Extended binary Golay code: 12x24 generator matrix, column j = point j.\n"
        "# Cyclic quadratic-residue code of length 23 on points 0..22 (point i = residue i),\n"
        "# parity on point 23; invariant under the bundled M24 generators.\n"
        f"# version: {VERSION}\n" + "\n".join(rows) + "\n"
    )
    m23 = PermGroup(24, m24.generators[:2]).restrict(range(23))
    assert m23.order() == 10200960
    m22 = prune_generators(m23.point_stabilizer(22).restrict(range(22)))
    assert m22.order() == 443520
    write("m24", m24, "M24", "standard generators on 1..24, shifted to 0..23")
    write("m23", m23, "M23", "first two M24 generators, which fix point 23")
    write("m22", m22, "M22", "stabilizer of point 22 in the bundled M23, on points 0..21")

    for name, G, title in [
        ("pgl3_2", cons.pgl_group(2), "PGL(3,2)"),
        ("pgl3_3", cons.pgl_group(3), "PGL(3,3)"),
        ("pgaml2_16", cons.pgl2_group(16, semilinear=True), "PGammaL(2,16)"),
    ]:
        write(name, G, title, "elementary matrices over the bundled field tables (see constructions)")


def golay_rows(m24: PermGroup) -> list[str]:
    q = {(x * x) % 23 for x in range(1, 23)}
    n = set(range(1, 23)) - q
    for support in (q | {0}, n | {0}, q, n):
        base = sum(1 << i for i in support)
        shifts = [((base << s) | (base >> (23 - s))) & ((1 << 23) - 1) for s in range(23)]
        basis = echelon(shifts)
        if len(basis) != 12:
            continue
        rows = [b | ((popcount(b) & 1) << 23) for b in basis]
        words = [0]
        for r in rows:
            words += [w ^ r for w in words]
        if min(popcount(w) for w in words if w) != 8:
            continue
        octads = {w for w in words if popcount(w) == 8}
        if all(apply(g, o) in octads for g in m24.generators for o in octads):
            return ["".join(str(r >> j & 1) for j in range(24)) for r in rows]
    raise SystemExit("no QR code is invariant under the M24 generators")


def echelon(vectors):
    basis = []
    for vec in vectors:
        for b in basis:
            vec = min(vec, vec ^ b)
        if vec:
            basis.append(vec)
    return basis


if __name__ == "__main__":
    main()
