"""Time the hot kernels under the numba and numpy backends.

Run with ``python benchmarks/bench_kernels.py``.  Each workload is run once
under both backends to warm the JIT cache, then timed with ``timeit`` taking
the best of ``--repeat`` runs.
"""
import argparse
import timeit

import numpy as np

from deltamod import _kernels as kern
from deltamod.constructions import lower_bound_matrix
from deltamod.search import max_differing_columns


def workloads(rng):
    mats = rng.integers(-5, 6, size=(20000, 4, 4))
    lb = np.array(lower_bound_matrix(3, 4).columns(), dtype=np.int64)
    rows = rng.integers(-3, 4, size=(14, 4))
    return {
        "det_batch 20000 x 4x4": lambda: kern.det_batch(mats),
        "max_abs_minor 18 cols, m=4": lambda: kern.max_abs_minor(lb),
        "max_abs_minor bounded": lambda: kern.max_abs_minor(lb, bound=9),
        "all_normals 14 rows, m=4": lambda: kern.all_normals(rows),
        "search c(2,3)": lambda: max_differing_columns(2, 3),
        "search c(3,3)": lambda: max_differing_columns(3, 3),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    jobs = workloads(np.random.default_rng(args.seed))
    backends = ["numba", "numpy"] if kern.HAVE_NUMBA else ["numpy"]
    timings = {}
    for name in backends:
        with kern.use_backend(name):
            for label, job in jobs.items():
                job()
                timings[label, name] = min(timeit.repeat(job, number=1, repeat=args.repeat))

    print(f"{'workload':32} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for label in jobs:
        cells = " ".join(f"{timings[label, b] * 1e3:8.2f}ms" for b in backends)
        speedup = ""
        if len(backends) == 2:
            speedup = f"{timings[label, 'numpy'] / timings[label, 'numba']:8.1f}x"
        print(f"{label:32} {cells} {speedup}")


if __name__ == "__main__":
    main()
