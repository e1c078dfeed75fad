"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload runs once per backend; the table reports the best of
``--repeat`` runs and the speed-up of the compiled core.
"""

from __future__ import annotations

import argparse
import time

from isomon import kernels
from isomon.forms import build_forms
from isomon.monoid_families import generating_set
from isomon.presentations import build_presentation
from isomon.rewrite.rules import Codec
from isomon.rewrite.search import _sides


def closure_workload(k, n=8):
    fam = generating_set("B", n)
    gens = [e.images for _, e in fam.elements]
    ident = bytes(range(1, n + 1))
    return lambda: k.closure_images(gens, ident, 10**6)


def expand_workload(k, n=5, layers=3):
    p = build_presentation("R", n)
    codec = Codec(p.alphabet)
    sides, _ = _sides(codec, p.relations)
    start = codec.encode(("x4", "x5", "x4", "x4", "x5", "x4", "x5"))

    def run():
        seen = {start: None}
        frontier = [start]
        for _ in range(layers):
            frontier, _, _ = k.expand(frontier, sides, 12, seen, {}, 10**7)
            frontier.sort()
        return len(seen)

    return run


def reduce_workload(k, n=6):
    c = build_forms(n)
    p = build_presentation("R", n)
    codec = Codec(p.alphabet)
    rules = [(codec.encode(r.lhs), codec.encode(r.rhs)) for r in p.relations if len(r.lhs) > len(r.rhs)]
    words = [codec.encode(w + w[::-1]) for w in c.words]
    return lambda: [k.reduce_word(w, rules) for w in words]


WORKLOADS = {
    "closure DP_8": closure_workload,
    "expand R_5, 3 layers": expand_workload,
    "reduce_word R_6 forms": reduce_workload,
}


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = [("python", kernels.python)]
    if kernels.cython is not None:
        backends.append(("cython", kernels.cython))
    else:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'workload':<26}" + "".join(f"{name:>12}" for name, _ in backends) + "   speed-up")
    for label, make in WORKLOADS.items():
        row = [best(make(mod), args.repeat) for _, mod in backends]
        line = f"{label:<26}" + "".join(f"{t * 1000:10.1f}ms" for t in row)
        if len(row) == 2:
            line += f"   {row[0] / row[1]:7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
