"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each workload runs on both backends; results must agree and the table
reports the best wall time of ``--repeat`` runs.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from scoresheets import kernels
from scoresheets.dd import DoubleDescription
from scoresheets.forms import cone_inequalities


def _count(family, n, N):
    spec = cone_inequalities(family, n)
    A = spec.matrix()
    return lambda b: kernels.count_by_degree(A, spec.dim, N, backend=b)


def _enumerate(family, n, N):
    spec = cone_inequalities(family, n)
    A = spec.matrix()
    return lambda b: sorted(map(tuple, kernels.enumerate_points(A, spec.dim, N, backend=b)))


def _dd(family, n):
    rows = [f.coeffs for f in cone_inequalities(family, n).inequalities]
    return lambda b: DoubleDescription(rows, backend=b).rays()


def _dets(size, count, seed=0):
    rng = np.random.default_rng(seed)
    mats = [rng.integers(-3, 4, size=(size, size)) for _ in range(count)]
    return lambda b: [kernels.det_adj(M, backend=b)[0] for M in mats]


def workloads(quick: bool):
    if quick:
        return [
            ("count consistent n=3 G<=30", _count("consistent", 3, 30)),
            ("enumerate ordered n=3 G<=12", _enumerate("ordered", 3, 12)),
            ("double description runner-up n=4", _dd("runner-up", 4)),
            ("det/adjugate 12x12 x50", _dets(12, 50)),
        ]
    return [
        ("count consistent n=3 G<=60", _count("consistent", 3, 60)),
        ("count consistent n=4 G<=8", _count("consistent", 4, 8)),
        ("enumerate consistent n=4 G<=8", _enumerate("consistent", 4, 8)),
        ("double description runner-up n=5", _dd("runner-up", 5)),
        ("double description consistent n=4", _dd("consistent", 4)),
        ("det/adjugate 20x20 x200", _dets(20, 200)),
    ]


def best_of(fn, backend, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(backend)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    a = ap.parse_args(argv)
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'workload':40s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, fn in workloads(a.quick):
        times, outs = [], []
        for b in backends:
            t, out = best_of(fn, b, a.repeat)
            times.append(t)
            outs.append(out)
        if any(o != outs[0] for o in outs[1:]):
            raise SystemExit(f"{name}: backends disagree")
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
        print(f"{name:40s} " + " ".join(f"{t:9.3f}s" for t in times) + f"  {speed}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
