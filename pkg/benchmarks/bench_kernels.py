"""Time the compiled and numpy oracle kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--d 5] [--c1 5] [--c2 1] [--box 6]
"""

import argparse
import time

import numpy as np

from veech2 import _kernels_py
from veech2.enumeration import _box_elements, _omega, target

try:
    from veech2 import _kernels
except ImportError:
    _kernels = None


def inputs(d, c1, c2, box):
    A = target(c1, c2, d)
    s, c = _omega(d)
    elems = _box_elements(d, box)
    coords = np.array([[int(v) for v in x.basis_coords()] for x in elems], dtype=np.int64)
    rank = np.arange(len(elems), dtype=np.int64)
    pos = np.array([i for i, x in enumerate(elems) if x.sign() > 0], dtype=np.int64)
    nonneg = np.array([i for i, x in enumerate(elems) if x.sign() >= 0], dtype=np.int64)
    a0, a1 = (int(v) for v in A.basis_coords())
    return dict(
        E=np.ascontiguousarray(coords[pos]), erank=np.ascontiguousarray(rank[pos]),
        T=np.ascontiguousarray(coords[nonneg]), trank=np.ascontiguousarray(rank[nonneg]),
        pos=pos, coords=coords, a=(a0, a1), sc=(s, c),
    )


def run(mod, x):
    start = time.perf_counter()
    quads = mod.oracle_pairs(x["E"], x["erank"], *x["a"], *x["sc"])
    pairs = 0
    for i, _, k, _ in quads:
        pi, pk = int(x["pos"][i]), int(x["pos"][k])
        pairs += len(mod.oracle_twists(
            x["T"], x["trank"],
            int(x["coords"][pi, 0]), int(x["coords"][pi, 1]), pi,
            int(x["coords"][pk, 0]), int(x["coords"][pk, 1]), pk,
            *x["sc"],
        ))
    return time.perf_counter() - start, len(quads), pairs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=5)
    ap.add_argument("--c1", type=int, default=5)
    ap.add_argument("--c2", type=int, default=1)
    ap.add_argument("--box", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    x = inputs(a.d, a.c1, a.c2, a.box)
    results = {}
    for name, mod in (("cython", _kernels), ("numpy", _kernels_py)):
        if mod is None:
            print(f"{name:7s} unavailable")
            continue
        best = min(run(mod, x) for _ in range(a.repeat))
        results[name] = best
        print(f"{name:7s} {best[0]:8.3f} s  quads={best[1]}  solutions={best[2]}")
    if len(results) == 2:
        assert results["cython"][1:] == results["numpy"][1:], "backends disagree"
        print(f"speedup {results['numpy'][0] / results['cython'][0]:.1f}x")


if __name__ == "__main__":
    main()
