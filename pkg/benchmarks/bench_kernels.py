"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit

from fockforge import _kernels_py

try:
    from fockforge import _kernels as compiled
except ImportError:
    compiled = None


def cases(rng):
    a = [rng.randint(-9, 9) for _ in range(200)]
    b = [rng.randint(-9, 9) for _ in range(200)]
    n2 = 20
    a2 = [rng.randint(-9, 9) for _ in range((n2 + 1) ** 2)]
    b2 = [rng.randint(-9, 9) for _ in range((n2 + 1) ** 2)]
    parts = [tuple(p) for p in _kernels_py.partitions_of(18)]
    return [
        ("conv1d 200x200", lambda k: k.conv1d(a, b, 199)),
        ("conv2d 21x21 grid", lambda k: k.conv2d(a2, b2, n2)),
        ("partitions_of(22)", lambda k: k.partitions_of(22)),
        ("corner_excess over p(18)", lambda k: [k.corner_excess(p) for p in parts]),
        ("corner_cells over p(18)", lambda k: [k.corner_cells(p) for p in parts]),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(0)
    print(f"{'kernel':28s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in cases(rng):
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:28s} {t_py:10.2f} {'n/a':>10s} {'':>8s}")
            continue
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:28s} {t_py:10.2f} {t_c:10.2f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
