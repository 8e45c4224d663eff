"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Covers exhaustive orientation enumeration, ternary enumeration and the
per-node violation check used by the simulator.
"""

import argparse
import random
import timeit

from localcert import _kernels_py
from localcert.classes import gen_chordal, gen_dismantlable

try:
    from localcert import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases():
    chordal = gen_chordal(9, 7, 1)
    dism = gen_dismantlable(9, True, 2, density=0.6)
    st = gen_dismantlable(9, False, 3)
    rng = random.Random(0)
    states = [rng.getrandbits(dism.degree(v)) for v in range(dism.n)]
    adj = lambda g: [list(r) for r in g.adjacency]  # noqa: E731

    def enum_chordal(mod):
        return lambda: mod.OrientationKernel(adj(chordal), list(chordal.edges), mod.CHORDAL).accepted_dirmasks()

    def enum_dism(mod):
        return lambda: mod.OrientationKernel(adj(dism), list(dism.edges), mod.DISMANTLABLE).accepted_dirmasks()

    def enum_st(mod):
        return lambda: mod.TernaryKernel(adj(st), 0).accepted_assignments()

    def check(mod):
        k = mod.OrientationKernel(adj(dism), list(dism.edges), mod.DISMANTLABLE)

        def go():
            for _ in range(2000):
                for v in range(dism.n):
                    k.violations(states, v)
        return go

    return [
        (f"orientations chordal |E|={chordal.m}", enum_chordal),
        (f"orientations dismantlable |E|={dism.m}", enum_dism),
        (f"ternary n={st.n}", enum_st),
        ("violations x2000 sweeps", check),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"{'case':40} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, make in cases():
        py = min(timeit.repeat(make(_kernels_py), number=1, repeat=args.repeat))
        if _kernels_c is None:
            print(f"{name:40} {py:10.4f} {'n/a':>10} {'':>8}")
            continue
        c = min(timeit.repeat(make(_kernels_c), number=1, repeat=args.repeat))
        print(f"{name:40} {py:10.4f} {c:10.4f} {py / c:7.1f}x")


if __name__ == "__main__":
    main()
