"""Time the numba kernels against their numpy fallbacks.

Both implementations are called directly, so the backend flag does not
matter here.  Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from defectchain import numerics
from defectchain._accel import HAS_NUMBA


def cases():
    rng = np.random.default_rng(7)
    xs = np.linspace(0.0, 60.0, 2001)
    nodes = numerics.gauss_legendre_rule(1024)
    coeffs = nodes.weights * np.exp(1j * 5 * nodes.nodes)
    energies = 2.0 - np.cos(nodes.nodes)
    times = np.sort(rng.uniform(0.0, 60.0, 400))
    yield ("miller table (n_max=40, 2001 x)", numerics._miller_table_nb,
           numerics._miller_table_np, (40, xs))
    yield ("phase sum (1024 nodes, 400 t)", numerics._phase_sum_nb,
           numerics._phase_sum_np, (coeffs.astype(complex), energies, times))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not HAS_NUMBA:
        print("numba not installed; only the numpy path is available")
    print(f"{'kernel':36s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s} {'max diff':>9s}")
    for name, fast, slow, inputs in cases():
        a, b = fast(*inputs), slow(*inputs)  # first call compiles
        diff = float(np.abs(np.asarray(a) - np.asarray(b)).max())
        t_fast = min(timeit.repeat(lambda: fast(*inputs), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: slow(*inputs), number=1, repeat=args.repeat))
        print(f"{name:36s} {1e3 * t_fast:10.2f} {1e3 * t_slow:10.2f} "
              f"{t_slow / t_fast:8.1f} {diff:9.1e}")


if __name__ == "__main__":
    main()
