"""Command-line front end.

Subcommands: construct, analyze, orbits, screen, verify.
Exit codes: 0 ok, 2 bad input, 3 memory cap refused, 4 verification failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import analysis as an
from . import constructions as cons
from . import kernels
from . import reproduce
from . import screening as sc
from .errors import DesignError, GroupError, MemoryCapError, NotPreservedError
from .johnson import Design, points
from .permgroup import (
    DEFAULT_MAX_RANKS,
    PermGroup,
    orbits_on_ksubsets,
    read_group,
    symmetric_group,
    wreath_product,
    write_group,
    young_subgroup,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MEMORY = 3
EXIT_VERIFY = 4


class InputError(Exception):
    pass


# ---- construction registry ----------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"{args.name} needs " + ", ".join(f"--{n}" for n in missing))


def _pg_lines(args):
    _need(args, "q")
    return cons.pg_lines(args.q)


def _ag_lines(args):
    _need(args, "q")
    return cons.ag_lines(args.q), None


def _witt(args):
    _need(args, "n")
    groups = {24: "m24", 23: "m23", 22: "m22", 12: "m12"}
    if args.n not in groups:
        raise InputError("--n must be one of 12, 22, 23, 24")
    return cons.witt(args.n), cons.bundled_group(groups[args.n])


def _example1(args):
    _need(args, "v", "k", "y")
    Y = [int(t) for t in args.y.replace(",", " ").split()]
    return cons.example1(args.v, args.k, Y), young_subgroup(args.v, Y)


def _example2(args):
    _need(args, "a", "k")
    return cons.example2(args.a, args.k), wreath_product(args.a, 2)


def _example3(args):
    _need(args, "b", "k")
    return cons.example3(args.b, args.k), wreath_product(2, args.b)


def _example4(args):
    _need(args, "a", "b")
    return cons.example4(args.a, args.b), wreath_product(args.a, args.b)


def _example5(args):
    _need(args, "a", "b")
    return cons.example5(args.a, args.b), wreath_product(args.a, args.b)


def _disjoint(args):
    _need(args, "v", "k")
    d = cons.disjoint_blocks(args.v, args.k)
    return d, wreath_product(args.k, args.v // args.k)


CONSTRUCTIONS: dict[str, tuple[str, Callable[[Any], tuple[Design, PermGroup | None]]]] = {
    "pg-lines": ("lines of PG(2,q); needs --q", _pg_lines),
    "ag-lines": ("lines of AG(2,q); needs --q", _ag_lines),
    "witt": ("Witt design on --n points (12, 22, 23, 24)", _witt),
    "biplane": ("2-(11,5,2) biplane with L2(11)", lambda a: (cons.biplane11(), cons.bundled_group("l2_11"))),
    "extended-biplane": ("3-(12,6,2) design with M11 on 12 points",
                         lambda a: (cons.extended_biplane12(), cons.bundled_group("m11_12"))),
    "inversive": ("inversive plane of order 4 with PGammaL(2,16)",
                  lambda a: (cons.inversive_plane4(), cons.bundled_group("pgaml2_16"))),
    "example1": ("k-sets meeting Y maximally; needs --v --k --y", _example1),
    "example2": ("k-sets inside one of two cells of size a; needs --a --k", _example2),
    "example3": ("partial transversals of b pairs; needs --b --k", _example3),
    "example4": ("transversal triples of b cells of size a; needs --a --b", _example4),
    "example5": ("transversal pairs of b cells of size a; needs --a --b", _example5),
    "disjoint": ("v/k disjoint k-sets; needs --v --k", _disjoint),
}


# ---- input helpers ---------------------------------------------------------------

def load_design(spec: str) -> Design:
    path = Path(spec)
    if path.exists():
        return cons.read_design(path)
    try:
        return reproduce.instance(spec)[0]
    except KeyError:
        raise InputError(f"no design file or bundled instance named {spec!r}") from None


def load_group(spec: str) -> PermGroup:
    path = Path(spec)
    if path.exists():
        return read_group(path)
    if spec in cons.BUNDLED_GROUPS:
        return cons.bundled_group(spec)
    if spec.startswith("sym"):
        return symmetric_group(int(spec[3:]))
    raise InputError(f"no group file or bundled group named {spec!r}")


def manifest(command: str, inputs: list[str], params: dict[str, Any], out: str | None) -> dict[str, Any]:
    return {"command": command, "inputs": inputs, "parameters": params, "output": out,
            "deterministic": True}


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---- commands ---------------------------------------------------------------------

def cmd_construct(args) -> int:
    if args.name not in CONSTRUCTIONS:
        raise InputError(f"unknown construction {args.name!r}; choose from {', '.join(CONSTRUCTIONS)}")
    d, G = CONSTRUCTIONS[args.name][1](args)
    emit(cons.format_design(d), args.out)
    if args.group:
        if G is None:
            raise InputError(f"{args.name} has no bundled group")
        write_group(G, args.group, {"name": G.name or args.name, "order": str(G.order())})
    return EXIT_OK


def cmd_analyze(args) -> int:
    d = load_design(args.design)
    G = load_group(args.group) if args.group else None
    rep = an.analyze(d, G, args.max_ranks)
    payload = rep.to_dict()
    payload["manifest"] = manifest("analyze", [args.design] + ([args.group] if args.group else []),
                                   {"max_ranks": args.max_ranks}, args.out)
    if args.format == "json":
        emit(dump_json(payload), args.out)
    else:
        emit(_analysis_text(payload), args.out)
    return EXIT_OK


def _analysis_text(p: dict[str, Any]) -> str:
    cr = p["completely_regular"]
    lines = [
        f"design: {p['name'] or '(unnamed)'}  v={p['v']} k={p['k']} blocks={len(p['blocks'])}",
        f"minimum distance: {p['delta']}",
        f"covering radius: {p['r']}",
        f"cell sizes: {p['cell_sizes']}",
        f"strength: {p['strength']}",
        f"completely regular: {cr['verdict']}",
    ]
    if cr["verdict"]:
        lines.append(f"intersection numbers: {cr['intersection_numbers']}")
    else:
        lines.append(f"witness: {cr['witness']}")
    if "group" in p:
        g = p["group"]
        lines.append(f"group: {g['name']} order {g['order']}")
        lines.append(f"orbits (size, distance): {[(o['size'], o['distance']) for o in g['orbits']]}")
        lines.append(f"completely transitive: {g['completely_transitive']}")
    return "\n".join(lines) + "\n"


def orbit_census(G: PermGroup, k: int, max_ranks: int | None) -> dict[str, Any]:
    """Orbits on k-subsets with the minimum Johnson distance between each pair."""
    orbs = orbits_on_ksubsets(G, k, max_ranks)
    n = len(orbs)
    dmat = np.zeros((n, n), dtype=np.int64)
    for i, cell in enumerate(orbs.cells):
        dist = kernels.impl.bfs_distances(G.v, k, cell.astype(np.int64))
        for j, other in enumerate(orbs.cells):
            dmat[i, j] = int(dist[other].min())
    masks = kernels.impl.unrank_all(G.v, k)
    return {
        "group": G.name,
        "v": G.v,
        "k": k,
        "order": G.order(),
        "orbits": [{"size": int(c.size), "stabilizer_order": G.order() // int(c.size),
                    "representative": list(points(int(masks[c[0]])))} for c in orbs.cells],
        "min_distance": dmat.tolist(),
    }


def cmd_orbits(args) -> int:
    if not args.group or args.k is None:
        raise InputError("orbits needs --group and --k")
    G = load_group(args.group)
    if not 0 <= args.k <= G.v:
        raise InputError(f"--k must lie in 0..{G.v}")
    census = orbit_census(G, args.k, args.max_ranks)
    census["manifest"] = manifest("orbits", [args.group], {"k": args.k, "max_ranks": args.max_ranks}, args.out)
    if args.format == "json":
        emit(dump_json(census), args.out)
    elif args.format == "csv":
        rows = ["orbit,size,stabilizer_order,representative," +
                ",".join(f"d{j}" for j in range(len(census["orbits"])))]
        for i, o in enumerate(census["orbits"]):
            rep = " ".join(map(str, o["representative"]))
            rows.append(f"{i},{o['size']},{o['stabilizer_order']},{rep}," +
                        ",".join(map(str, census["min_distance"][i])))
        emit("\n".join(rows) + "\n", args.out)
    else:
        lines = [f"{census['group']} (order {census['order']}) on {census['k']}-subsets of {census['v']} points: "
                 f"{len(census['orbits'])} orbits"]
        for i, o in enumerate(census["orbits"]):
            lines.append(f"  {i}: size {o['size']}, stabilizer {o['stabilizer_order']}, rep {o['representative']}")
        lines.append("  minimum distances:")
        lines.extend("    " + " ".join(f"{x:2d}" for x in row) for row in census["min_distance"])
        emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_screen(args) -> int:
    fams = list(sc.FAMILIES) if args.family == "all" else [args.family]
    tables = []
    for f in fams:
        try:
            tables.append(sc.family_screen(f))
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    if args.format == "json":
        emit(dump_json({"tables": [t.to_json() for t in tables],
                        "manifest": manifest("screen", [], {"family": args.family}, args.out)}), args.out)
    elif args.format == "csv":
        text = tables[0].to_csv()
        for t in tables[1:]:
            text += "".join(t.to_csv().splitlines(keepends=True)[1:])
        emit(text, args.out)
    else:
        emit("".join(t.to_text() for t in tables), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = reproduce.run_all()
    audit = reproduce.run_audit()
    failed = [r for r in results if r.status != reproduce.PASS]
    if args.format == "json":
        payload = {
            "criteria": [{"number": r.number, "title": r.title, "status": r.status,
                          "checks": [{"label": c.label, "ok": c.ok, "detail": c.detail} for c in r.checks],
                          "error": r.error} for r in results],
            "audit": [a.as_dict() for a in audit],
        }
        emit(dump_json(payload), args.out)
    else:
        lines = [r.report() if args.verbose else r.line() for r in results]
        lines.append("")
        lines.append("audit:")
        lines.extend(f"  [{a.status}] {a.claim}: claimed {a.claimed}, recomputed {a.recomputed}" for a in audit)
        lines.append("")
        lines.append(f"{len(results) - len(failed)} of {len(results)} criteria passed")
        emit("\n".join(lines) + "\n", args.out)
    return EXIT_VERIFY if failed else EXIT_OK


# ---- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--max-ranks", type=int, default=DEFAULT_MAX_RANKS,
                        help="refuse to enumerate more k-subsets than this (default 2^27)")

    p = argparse.ArgumentParser(prog="ctdesign", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="write a design file",
                       epilog="constructions: " + "; ".join(f"{k}: {v[0]}" for k, v in CONSTRUCTIONS.items()))
    c.add_argument("name")
    for flag in ("q", "n", "v", "k", "a", "b"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("--y", help="points of Y for example1, e.g. '0,1,2'")
    c.add_argument("--group", help="also write the natural group to this file")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", parents=[common], help="distance partition, CR and CT verdicts")
    a.add_argument("--design", required=True, help="design file or bundled instance name")
    a.add_argument("--group", help="group file or bundled group name")
    a.set_defaults(func=cmd_analyze)

    o = sub.add_parser("orbits", parents=[common], help="orbit census on k-subsets")
    o.add_argument("--group", required=True)
    o.add_argument("--k", type=int, required=True)
    o.set_defaults(func=cmd_orbits)

    s = sub.add_parser("screen", parents=[common], help="screen a 2-transitive family")
    s.add_argument("--family", required=True, choices=list(sc.FAMILIES) + ["all"])
    s.set_defaults(func=cmd_screen)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance criteria and audit")
    v.add_argument("--verbose", action="store_true", help="show every check")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_ranks is not None and args.max_ranks <= 0:
        parser.error("--max-ranks must be positive")
    try:
        return args.func(args)
    except MemoryCapError as exc:
        print(f"ctdesign: {exc}", file=sys.stderr)
        return EXIT_MEMORY
    except (InputError, DesignError, GroupError, NotPreservedError, OSError) as exc:
        print(f"ctdesign: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
