"""Time each hot kernel under the numba and numpy backends.

Run with ``python3 benchmarks/bench_kernels.py``. Compilation is excluded:
every kernel is called once per backend before timing starts.
"""
import argparse
import time

import numpy as np

from geonet import generators as gen
from geonet._accel import NUMBA_OK
from geonet.kernels import bfs_counts, disconnect_counts, edge_loads, exact_q_matrix


def _best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def cases(trials):
    big = gen.chordal_ring(200, 21)
    pet = gen.petersen()
    rng = np.random.default_rng(0)
    fail = rng.random((trials, pet.m)) < 1 / 15
    nodes = rng.random((trials, pet.n)) < 0.05
    dist, sigma = bfs_counts(big.n, big.edge_array)
    return {
        "bfs_counts chordal_ring(200,21)": lambda b: bfs_counts(big.n, big.edge_array, backend=b),
        "edge_loads chordal_ring(200,21)": lambda b: edge_loads(dist, sigma, big.edge_array, backend=b),
        f"disconnect_counts petersen x{trials}": lambda b: disconnect_counts(pet.n, pet.edge_array, fail, backend=b),
        f"disconnect_counts petersen x{trials} +nodes": lambda b: disconnect_counts(
            pet.n, pet.edge_array, fail, nodes, backend=b),
        "exact_q_matrix petersen": lambda b: exact_q_matrix(pet.n, pet.edge_array, 0.0, 1 / 15, backend=b),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--trials", type=int, default=20_000)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if NUMBA_OK else [])
    table = cases(args.trials)
    for fn in table.values():
        for b in backends:
            fn(b)
    print(f"{'kernel':48s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in table.items():
        t = {b: _best_of(lambda: fn(b), args.repeat) for b in backends}
        row = f"{name:48s}" + "".join(f"{t[b]:11.4f}s" for b in backends)
        if len(backends) == 2:
            row += f"{t['numpy'] / t['numba']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
