"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

JIT compilation happens in a warm-up call and is excluded from the timings.
"""

import argparse
import timeit

import numpy as np

from qalphabet import _kernels


def cases():
    rng = np.random.default_rng(0)
    uniforms = rng.random(4_000_000)
    cum = np.cumsum(rng.dirichlet(np.ones(21)))
    state = np.full(4096, 1 / 64, dtype=np.complex128)
    return {
        "grover_loop N=4096 Q=50": lambda k: k.grover_loop(state.copy(), 17, 50),
        "grover_loop N=21 Q=3 x2000": lambda k: [k.grover_loop(np.full(21, 21**-0.5, dtype=np.complex128), 0, 3) for _ in range(2000)],
        "count_below 4e6 sites": lambda k: k.count_below(uniforms, 9.5e-4),
        "sample_indices 4e6 draws": lambda k: k.sample_indices(cum, uniforms),
        "reduced_loop Q=1e5": lambda k: k.reduced_loop(0.1, 0.9, 0.3, 0.0, 0.8, 0.6, 0.9, 100_000),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [_kernels.numpy_kernels] + ([_kernels.numba_kernels] if _kernels.HAS_NUMBA else [])
    print(f"{'kernel':32s}" + "".join(f"{k.name:>12s}" for k in backends) + ("     speedup" if len(backends) == 2 else ""))
    for label, fn in cases().items():
        times = []
        for k in backends:
            fn(k)
            times.append(min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)))
        row = f"{label:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
