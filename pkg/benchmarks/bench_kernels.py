"""Time the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--quick]
"""
from __future__ import annotations

import argparse
import time
from typing import Callable

import numpy as np

from ctdesign import _pykernels, kernels
from ctdesign.constructions import bundled_group, witt


def best_of(fn: Callable[[], object], repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(quick: bool):
    n = 23 if quick else 24
    d = witt(n)
    G = bundled_group(f"m{n}")
    v, k = d.v, d.k
    seeds = np.array(d.ranks(), dtype=np.int64)
    gens = G.gen_array()
    masks = _pykernels.unrank_all(v, k)
    dist = _pykernels.bfs_distances(v, k, seeds).astype(np.int32)
    ncells = int(dist.max()) + 1
    label = f"J({v},{k})"
    return [
        (f"unrank_all {label}", lambda m: m.unrank_all(v, k)),
        (f"rank_masks {label}", lambda m: m.rank_masks(masks, v, k)),
        (f"bfs_distances {label}", lambda m: m.bfs_distances(v, k, seeds)),
        (f"neighbor_profile {label}", lambda m: m.neighbor_profile(v, k, dist, ncells)),
        (f"orbit_labels M{n} {label}", lambda m: m.orbit_labels(v, k, gens)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="use the 23-point Witt design")
    args = ap.parse_args()

    backends = {name: kernels.get_backend(name) for name in kernels.available()}
    if "cython" not in backends:
        print("compiled kernels are not built; timing the numpy fallback only")
    header = f"{'kernel':36s}" + "".join(f"{b:>12s}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for name, call in cases(args.quick):
        row = {b: best_of(lambda m=m: call(m), args.repeat) for b, m in backends.items()}
        line = f"{name:36s}" + "".join(f"{row[b]:11.3f}s" for b in backends)
        if len(backends) == 2:
            line += f"{row['python'] / row['cython']:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
