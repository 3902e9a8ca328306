"""Compare the compiled and pure-Python kernels on seeded random graphs.

    python3 benchmarks/bench_kernels.py --n 50 100 200 --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from stmincut import kernels
from stmincut.instances import gen_random


def best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--p", type=float, default=0.2)
    ap.add_argument("--W", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = ["python"] + (["compiled"] if kernels.compiled_available() else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing the Python fallback only")
    print(f"{'kernel':<13}{'n':>6}{'m':>8}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for n in args.n:
        G = gen_random(n, args.p, args.W, args.seed)
        us, vs, ws = G.arrays()
        for name in ("stoer_wagner", "dinic"):
            times, outs = [], []
            for b in backends:
                mod = kernels.get(b)
                if name == "stoer_wagner":
                    call = lambda mod=mod: mod.stoer_wagner(n, us, vs, ws)
                else:
                    call = lambda mod=mod: mod.dinic(n, us, vs, ws, 0, n - 1)
                outs.append(call())
                times.append(best_time(call, args.repeat))
            # both backends must return identical answers
            for other in outs[1:]:
                assert other[0] == outs[0][0] and np.array_equal(other[1], outs[0][1])
            speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else f"{'-':>10}"
            print(f"{name:<13}{n:>6}{G.m:>8}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
