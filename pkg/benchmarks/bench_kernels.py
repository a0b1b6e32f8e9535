"""Compare the compiled and pure-Python kernels on the workloads the package runs.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

best_subset: exhaustive t=4 domination search on Kierstead(n) graphs.
subset_codes: class codes of random 5-subsets of a 600-vertex blow-up matrix.
Both backends must return identical results; the script exits 1 otherwise.
"""
import argparse
import json
import sys
import time

import numpy as np

from flagdom import _kernels_py
from flagdom.domination import color_masks, kierstead, random_coloring_matrix
from flagdom.blowup import sample_subsets

try:
    from flagdom import _kernels as compiled
except ImportError:
    compiled = None


def timed(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="write the results here as well")
    args = ap.parse_args(argv)

    if compiled is None:
        print("compiled kernels not built; only the Python fallback is available", file=sys.stderr)
    rows = []
    ok = True

    for n in (15, 24, 30):
        g = kierstead(n)
        masks = color_masks(g)
        pool = list(range(n))
        tp, rp = timed(_kernels_py.best_subset, masks, pool, 4, repeat=args.repeat)
        row = {"kernel": "best_subset", "case": f"kierstead n={n}, t=4", "python_s": tp}
        if compiled is not None:
            tc, rc = timed(compiled.best_subset, masks, pool, 4, repeat=args.repeat)
            row.update(cython_s=tc, speedup=tp / tc, agree=tuple(rc) == tuple(rp))
            ok &= row["agree"]
        rows.append(row)

    rng = np.random.default_rng(0)
    mat = random_coloring_matrix(600, rng)
    for samples in (10_000, 200_000):
        subs = sample_subsets(600, 5, samples, rng)
        tp, rp = timed(_kernels_py.subset_codes, mat, subs, repeat=args.repeat)
        row = {"kernel": "subset_codes", "case": f"{samples} 5-subsets of K_600", "python_s": tp}
        if compiled is not None:
            tc, rc = timed(compiled.subset_codes, mat, subs, repeat=args.repeat)
            row.update(cython_s=tc, speedup=tp / tc, agree=bool(np.array_equal(rc, rp)))
            ok &= row["agree"]
        rows.append(row)

    print(f"{'kernel':<14}{'case':<30}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for r in rows:
        cy = f"{r['cython_s']:.4f}" if "cython_s" in r else "-"
        sp = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['kernel']:<14}{r['case']:<30}{r['python_s']:>10.4f}{cy:>10}{sp:>9}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    if not ok:
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
