"""Time the group-table kernels under numba and under the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Groups S5, S6 and A7 are small enough to finish in seconds.  The first
numba call includes compilation and is excluded from the timings.
"""
import argparse
import time

import numpy as np

from orbgw import _kernels as K
from orbgw.groups import parse_group_spec

GROUPS = {
    "S5": "perm: (1 2); (1 2 3 4 5)",
    "S6": "perm: (1 2); (1 2 3 4 5 6)",
    "A7": "perm: (1 2 3); (3 4 5 6 7)",
}


def _workload(kernels, g):
    conj = kernels["conjugation_table"](g.mult, g.inverse)
    labels = kernels["class_labels"](conj)
    kernels["centralizer_sizes"](conj)
    reps = np.unique(labels)
    cls = np.searchsorted(reps, labels).astype(np.int64)
    for r in reps:
        members = np.nonzero(labels == r)[0].astype(np.int64)
        kernels["class_product_counts"](g.mult, cls, members, len(reps))
        kernels["pair_orbits"](conj, int(r), members)


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.NUMBA_AVAILABLE:
        print("numba unavailable or disabled; timing numpy only")
    print(f"{'group':>6} {'order':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, spec in GROUPS.items():
        g = parse_group_spec(spec)
        t_np = _best(lambda: _workload(K.NUMPY_KERNELS, g), args.repeat)
        if K.NUMBA_AVAILABLE:
            _workload(K.ACTIVE_KERNELS, g)  # compile / load cache
            t_nb = _best(lambda: _workload(K.ACTIVE_KERNELS, g), args.repeat)
            print(f"{name:>6} {g.order:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{name:>6} {g.order:>6} {t_np:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
