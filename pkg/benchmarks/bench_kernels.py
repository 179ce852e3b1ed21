"""Compare the pure-Python and compiled integer kernels.

Run with ``python benchmarks/bench_kernels.py``.  Each kernel is timed on the
same random inputs for every importable backend; an end-to-end decision on a
six-variable instance is timed as well by switching the kernel binding.
"""

from __future__ import annotations

import argparse
import random
import timeit

from waringeq import kernels
from waringeq.decide import decide_equiv
from waringeq.oracle import from_poly
from waringeq.scalarpoly import power_sum


def _int_matrix(rng, n, bits):
    return [[rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n)] for _ in range(n)]


def _cases(rng):
    n = 6
    a = _int_matrix(rng, n, 200)
    b = _int_matrix(rng, n, 200)
    aug = [row + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    p = power_sum([1] * n, _int_matrix(rng, n, 4), 6)
    terms = [
        (int(c), tuple((j, e) for j, e in enumerate(exps) if e)) for exps, c in p.sorted_terms()
    ]
    point = [rng.getrandbits(31) for _ in range(n)]
    return {
        "matmul 6x6 (200-bit)": lambda k: k.matmul(a, b),
        "gauss_jordan 6x12 (200-bit)": lambda k: k.gauss_jordan([r[:] for r in aug], n),
        "charpoly 6x6 (200-bit)": lambda k: k.charpoly(a),
        f"hom_eval {len(terms)} terms": lambda k: k.hom_eval(terms, point, 6),
    }


def _end_to_end(module, repeat):
    rng = random.Random(1)
    n, d = 6, 6
    p = power_sum([1] * n, _int_matrix(rng, n, 4), d)
    saved = {name: getattr(kernels, name) for name in ("hom_eval", "matmul", "matvec", "gauss_jordan", "charpoly")}
    try:
        for name in saved:
            setattr(kernels, name, getattr(module, name))
        return min(timeit.repeat(lambda: decide_equiv(from_poly(p)), number=1, repeat=repeat))
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--number", type=int, default=200)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    backends = kernels.available_backends()
    cases = _cases(random.Random(0))
    names = list(backends)
    print(f"{'kernel':32s}" + "".join(f"{b:>14s}" for b in names) + ("   speedup" if len(names) > 1 else ""))
    for label, fn in cases.items():
        times = []
        for b in names:
            mod = backends[b]
            t = min(timeit.repeat(lambda: fn(mod), number=args.number, repeat=args.repeat)) / args.number
            times.append(t)
        row = f"{label:32s}" + "".join(f"{t * 1e6:12.1f}us" for t in times)
        if len(times) > 1:
            row += f"   {times[0] / times[1]:6.2f}x"
        print(row)
    times = [_end_to_end(backends[b], args.repeat) for b in names]
    row = f"{'decide_equiv n=6 d=6':32s}" + "".join(f"{t * 1e3:12.1f}ms" for t in times)
    if len(times) > 1:
        row += f"   {times[0] / times[1]:6.2f}x"
    print(row)


if __name__ == "__main__":
    main()
