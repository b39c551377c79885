"""Time the oracle kernels: compiled extension against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each case runs both backends on the same random payoffs, checks that they
agree, and prints the best of N timings.
"""
import argparse
import random
import sys
import timeit

from opengames.kernels import _pykernels

try:
    from opengames.kernels import _ckernels
except ImportError:
    _ckernels = None


def nash_case(rng, shape):
    n = 1
    for d in shape:
        n *= d
    pay = [float(rng.randint(-5, 5)) for _ in range(n * len(shape))]
    return "nash_mask " + "x".join(map(str, shape)), lambda m: m.nash_mask(pay, shape, 1e-9)


def spe_case(rng, n1, n2):
    u1 = [float(rng.randint(0, 9)) for _ in range(n1 * n2)]
    u2 = [float(rng.randint(0, 9)) for _ in range(n1 * n2)]
    return f"spe_pairs {n2}^{n1} tables", lambda m: m.spe_pairs(u1, u2, n1, n2, 1e-9)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    cases = [
        nash_case(rng, [13, 13]),
        nash_case(rng, [120, 120]),
        nash_case(rng, [20, 20, 20]),
        spe_case(rng, 5, 5),
        spe_case(rng, 8, 4),
    ]
    if _ckernels is None:
        print("compiled kernels are not built; timing the Python fallback only")
    print(f"{'case':28} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in cases:
        t_py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{name:28} {t_py:10.4f} {'-':>10} {'-':>8}")
            continue
        a, b = fn(_pykernels), fn(_ckernels)
        if [tuple(x) if isinstance(x, list) else x for x in a] != [tuple(x) if isinstance(x, list) else x for x in b]:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_c = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat))
        print(f"{name:28} {t_py:10.4f} {t_c:10.4f} {t_py / max(t_c, 1e-9):7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
