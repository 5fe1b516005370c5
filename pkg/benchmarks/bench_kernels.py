"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from projmono import kernels
from projmono.corpus import load_poly
from projmono.monodromy import monodromy_generators
from projmono.pencil import branch_points, build_pencil, make_center
from projmono.scalars import QQi


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_aberth(mod, rng):
    polys = [rng.normal(size=13) + 1j * rng.normal(size=13) for _ in range(200)]
    return lambda: [mod.aberth(c, mod.initial_guesses(c)) for c in polys]


def bench_track(mod, rng):
    C = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
    C[:, -1] = 1.0
    x0 = np.roots(kernels.fiber_coeffs(C, 0.0)[::-1])
    return lambda: mod.track_segment(C, 0.0, 0.5 + 0.5j, x0, 1e-3)


def bench_monodromy(mod):
    f = load_poly("generic_quartic")
    chart = build_pencil(f, make_center(f, [QQi(1), QQi(2), QQi(3)]))
    bps = branch_points(chart)

    def run():
        saved = kernels.track_segment
        kernels.track_segment = mod.track_segment
        try:
            monodromy_generators(chart, bps)
        finally:
            kernels.track_segment = saved
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled extension not available; only the fallback can be timed")
    cases = [("aberth, 200 random degree-12 polys", lambda m: bench_aberth(m, np.random.default_rng(0))),
             ("track_segment, degree 6, 700 steps", lambda m: bench_track(m, np.random.default_rng(1))),
             ("monodromy, generic quartic (12 loops)", bench_monodromy)]
    print(f"{'kernel':42s} " + " ".join(f"{name:>10s}" for name in mods) + "   speedup")
    for label, make in cases:
        t = {name: best_of(make(mod), args.repeat) for name, mod in mods.items()}
        speed = f"{t['python'] / t['cython']:8.1f}x" if "cython" in t else ""
        print(f"{label:42s} " + " ".join(f"{t[n]:9.4f}s" for n in mods) + "  " + speed)


if __name__ == "__main__":
    main()
