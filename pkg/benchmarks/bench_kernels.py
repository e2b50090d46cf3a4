"""Time the numba kernels against their pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Both paths are called directly, so one process covers both backends
regardless of TMCLAB_NUMBA. Results must match; the script exits nonzero
if they do not.
"""

import argparse
import sys
import time

import numpy as np

from tmclab import _kernels
from tmclab import graph as g
from tmclab.randgraph import make_rng, sample_edges, trial_seed


def best_of(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def perm_code_case():
    G = g.complete_minus(7, "C4")
    return G.adjacency_matrix(), g._perms(7)


def gnp_case(n, p, seed=1):
    src, dst = sample_edges(n, p, make_rng(trial_seed(seed, n)))
    return n, src, dst


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba not installed; nothing to compare", file=sys.stderr)
        return 1

    adj, perms = perm_code_case()
    n1, s1, d1 = gnp_case(2000, 0.004)
    n2, s2, d2 = gnp_case(500, 0.05)
    ip, ix = _kernels.csr_from_edges(n2, s2, d2)
    cases = [
        ("min_perm_code n=7 (5040 perms)", _kernels._min_perm_code_np, _kernels._min_perm_code_nb, (adj, perms)),
        ("count_components n=2000", _kernels._count_components_np, _kernels._count_components_nb, (n1, s1, d1)),
        ("greedy_leaves n=500", _kernels._greedy_leaves_np, _kernels._greedy_leaves_nb, (n2, ip, ix)),
    ]
    print(f"{'kernel':34s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    ok = True
    for name, f_np, f_nb, fargs in cases:
        f_nb(*fargs)  # compile outside the timing
        t_np, r_np = best_of(f_np, fargs, args.repeat)
        t_nb, r_nb = best_of(f_nb, fargs, args.repeat)
        same = r_np == r_nb
        ok &= bool(np.all(same))
        print(f"{name:34s} {t_np * 1e3:10.3f} {t_nb * 1e3:10.3f} {t_np / t_nb:7.1f}x{'' if same else '  MISMATCH'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
