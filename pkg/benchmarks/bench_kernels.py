"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported directly, so the result does not depend on
FERMNLTS_PURE.  Outputs are checked for equality before timing.
"""

from __future__ import annotations

import argparse
import random
import timeit

from fermnlts._kernels import _pure

try:
    from fermnlts._kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def workloads(rng: random.Random):
    words = [[rng.randint(1, 40) for _ in range(rng.randint(2, 24))] for _ in range(2000)]
    n_bits = 900
    vecs = [rng.getrandbits(n_bits) & rng.getrandbits(n_bits) & rng.getrandbits(n_bits) for _ in range(700)]
    weights = [rng.random() for _ in range(18)]
    return {
        "sort_majorana x2000": (lambda m: [m.sort_majorana(w) for w in words]),
        "gf2_independent_flags 700x900": (lambda m: m.gf2_independent_flags(vecs, n_bits)),
        "best_bipartition k=18": (lambda m: m.best_bipartition(weights)),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not available; only the fallback can run")
    rng = random.Random(args.seed)
    print(f"{'kernel':34s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, fn in workloads(rng).items():
        t_py = min(timeit.repeat(lambda: fn(_pure), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:34s} {t_py:12.2f} {'-':>12s} {'-':>8s}")
            continue
        assert fn(_pure) == fn(_ckernels), name
        t_c = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:34s} {t_py:12.2f} {t_c:12.2f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
