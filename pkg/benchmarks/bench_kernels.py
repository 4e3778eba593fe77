"""Compare the compiled and pure-Python kernels on the hot loops.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from invwalk import _kernels
from invwalk.perm import draw_generators, shard_bitgen


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    gens_small = draw_generators(shard_bitgen(1, 0), 200_000 * 3, 4).reshape(200_000, 3)
    gens_long = draw_generators(shard_bitgen(2, 0), 20_000 * 200, 50).reshape(20_000, 200)
    return [
        ("walk n=4 t=3, 2e5 walks", lambda k: k.walk_inversions(gens_small, 5)),
        ("walk n=50 t=200, 2e4 walks", lambda k: k.walk_inversions(gens_long, 51)),
        ("enumerate n=5 t=7", lambda k: k.enumerate_total(5, 7)),
        ("enumerate n=6 t=8", lambda k: k.enumerate_total(6, 8)),
        ("heat float n=100 t=200", lambda k: k.heat_triangle_float(100, 200, 0.01)[0][-1]),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _kernels.available()
    if "cython" not in backends:
        print("compiled extension not built; only the pure-Python kernels are timed")
    print(f"{'case':<30}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, fn in cases():
        row, outs = [], []
        for k in backends.values():
            dt, out = best_of(lambda: fn(k), args.repeat)
            row.append(dt)
            outs.append(out)
        if isinstance(outs[0], np.ndarray):
            assert all(np.array_equal(o, outs[0]) for o in outs)
        elif isinstance(outs[0], float):
            assert all(abs(o - outs[0]) <= 1e-9 * abs(outs[0]) for o in outs)
        else:
            assert all(o == outs[0] for o in outs)
        speed = f"{row[0] / row[-1]:9.1f}x" if len(row) > 1 else ""
        print(f"{label:<30}" + "".join(f"{dt * 1e3:10.1f}ms" for dt in row) + f"{speed:>10}")


if __name__ == "__main__":
    main()
