"""Compare the numba kernels with the numpy fallback.

    python benchmarks/bench_kernels.py            # kernels + end-to-end sweep
    python benchmarks/bench_kernels.py --quick    # kernels only, fewer sizes

The end-to-end part runs the n <= N oracle sweep in a subprocess per backend,
since the backend is fixed at import time by COMMJORDAN_BACKEND.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from commjordan import _kernels

Q = 1_000_003

SWEEP = """
import time
from commjordan.fibers import enumerate_partitions
from commjordan.commutator_oracle import verify_q
from commjordan.exactlinalg import jordan_matrix
jordan_matrix((2, 1)) @ jordan_matrix((2, 1))  # trigger compilation outside the timer
start = time.perf_counter()
ok = all(verify_q(P).ok for n in range(1, {nmax} + 1) for P in enumerate_partitions(n))
print(time.perf_counter() - start, ok)
"""


def bench_kernel(name, numba_fn, numpy_fn, make_args, sizes, repeat):
    print(f"\n{name}")
    print(f"{'size':>6} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for size in sizes:
        args = make_args(size)
        np.testing.assert_array_equal(np.asarray(numba_fn(*args)), np.asarray(numpy_fn(*args)))
        numba_fn(*args)  # compile
        t_nb = min(timeit.repeat(lambda: numba_fn(*args), number=1, repeat=repeat)) * 1e3
        t_np = min(timeit.repeat(lambda: numpy_fn(*args), number=1, repeat=repeat)) * 1e3
        print(f"{size:>6} {t_nb:>10.3f} {t_np:>10.3f} {t_np / t_nb:>8.1f}x")


def sweep(backend, nmax):
    env = dict(os.environ, COMMJORDAN_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", SWEEP.format(nmax=nmax)], env=env, capture_output=True, text=True, check=True)
    seconds, ok = out.stdout.split()
    return float(seconds), ok == "True"


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--quick", action="store_true")
    parser.add_argument("--sweep-n", type=int, default=10)
    args = parser.parse_args()

    if not _kernels.HAVE_NUMBA:
        sys.exit("numba is not importable; nothing to compare")
    rng = np.random.default_rng(0)
    sizes = [8, 32] if args.quick else [8, 16, 32, 64, 128]
    repeat = 3 if args.quick else 7

    def square(size):
        return (rng.integers(0, Q, size=(size, size), dtype=np.int64), Q)

    def nilpotent(size):
        # Strictly upper triangular matrices: the shape that dominates the oracle.
        return (np.triu(rng.integers(0, Q, size=(size, size), dtype=np.int64), 1), Q)

    def pair(size):
        return (rng.integers(0, Q, size=(size, size), dtype=np.int64), rng.integers(0, Q, size=(size, size), dtype=np.int64), Q)

    bench_kernel("rank_mod (dense random)", _kernels.rank_mod_numba, _kernels.rank_mod_numpy, square, sizes, repeat)
    bench_kernel("rank_mod (strictly upper triangular)", _kernels.rank_mod_numba, _kernels.rank_mod_numpy, nilpotent, sizes, repeat)
    bench_kernel("matmul_mod", _kernels.matmul_mod_numba, _kernels.matmul_mod_numpy, pair, sizes, repeat)

    if not args.quick:
        print(f"\noracle sweep, all partitions of n <= {args.sweep_n}")
        for backend in ("numba", "numpy"):
            seconds, ok = sweep(backend, args.sweep_n)
            print(f"  {backend:<6} {seconds:8.2f}s  all agree: {ok}")


if __name__ == "__main__":
    main()
