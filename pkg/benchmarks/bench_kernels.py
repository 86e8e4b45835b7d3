"""Timing comparison of the compiled and pure-Python kernel backends.

Runs each kernel on representative sizes with both implementations,
checks the outputs are bit-identical, and prints the speedup.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from narrastyle._kernels import _pykern

try:
    from narrastyle._kernels import _ckern
except ImportError:
    raise SystemExit("compiled backend not built; nothing to compare")


def _matrix(rng: random.Random, n: int, d: int) -> np.ndarray:
    return np.array([[rng.uniform(-5.0, 5.0) for _ in range(d)]
                     for _ in range(n)], dtype=np.float64)


def _adjacency(rng: random.Random, n: int, p: float) -> np.ndarray:
    A = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                A[i, j] = A[j, i] = rng.uniform(0.1, 2.0)
    return A


def bench_case(name, py_call, c_call, equal, repeat):
    py_out = py_call()
    c_out = c_call()
    assert equal(py_out, c_out), f"{name}: backends disagree"
    t_py = min(timeit.repeat(py_call, number=1, repeat=repeat))
    t_c = min(timeit.repeat(c_call, number=1, repeat=repeat))
    print(f"{name:<28} python {t_py * 1e3:9.2f} ms   "
          f"c {t_c * 1e3:9.2f} ms   speedup {t_py / t_c:6.1f}x")


def sweep_state(kern, A, k, order, two_m):
    comm = np.arange(A.shape[0], dtype=np.int64)
    tot = k.copy()
    count = np.ones(A.shape[0], dtype=np.int64)
    moves = kern.louvain_sweep(A, k.copy(), comm, tot, count, order.copy(),
                               two_m, 1.0)
    return moves, comm.tolist(), tot.tobytes(), count.tolist()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions per case (default 3)")
    args = parser.parse_args()
    rng = random.Random(0)

    bytes_equal = lambda a, b: a.tobytes() == b.tobytes()

    for n, d in ((50, 33), (200, 33), (100, 500)):
        X = _matrix(rng, n, d)
        bench_case(f"pearson_matrix {n}x{d}",
                   lambda X=X: _pykern.pearson_matrix(X),
                   lambda X=X: _ckern.pearson_matrix(X),
                   bytes_equal, args.repeat)

    for n in (200, 500):
        M = _matrix(rng, n, n)
        bench_case(f"rohde {n}x{n}",
                   lambda M=M: _pykern.rohde(M),
                   lambda M=M: _ckern.rohde(M),
                   bytes_equal, args.repeat)

    for n in (1000, 4000):
        x = np.array([rng.randint(0, 50) for _ in range(n)], dtype=np.float64)
        y = np.array([rng.randint(0, 50) for _ in range(n)], dtype=np.float64)
        bench_case(f"kendall_counts n={n}",
                   lambda x=x, y=y: _pykern.kendall_counts(x, y),
                   lambda x=x, y=y: _ckern.kendall_counts(x, y),
                   lambda a, b: a == b, args.repeat)

    for n in (100, 300):
        A = _adjacency(rng, n, 0.1)
        k = A.sum(axis=1)
        two_m = float(k.sum())
        order = np.array(rng.sample(range(n), n), dtype=np.int64)
        bench_case(f"louvain_sweep n={n}",
                   lambda: sweep_state(_pykern, A, k, order, two_m),
                   lambda: sweep_state(_ckern, A, k, order, two_m),
                   lambda a, b: a == b, args.repeat)


if __name__ == "__main__":
    main()
