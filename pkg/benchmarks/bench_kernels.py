"""Compiled vs pure-Python kernels: quartic root, tilde spray, and a gauss3 RK4 ray.

Run:  python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import random
import time

from slopenav import _pykernels as py

try:
    from slopenav import _ckernels as cy
except ImportError:  # extension not built
    cy = None


def _best(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _samples(n, seed=1):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        eta, etat = rng.random(), rng.random()
        b0 = py.wind_bound(eta, etat)
        g = rng.uniform(0.0, 0.95) * min(b0, 5.0)
        out.append((rng.uniform(-1.0, 1.0), g * g, eta, etat))
    return out


def bench_roots(k, samples):
    def run():
        for s, G2, e, et in samples:
            k.phi_root(s, G2, e, et)
    return run


def bench_spray(k, n):
    rng = random.Random(2)
    states = []
    for _ in range(n):
        x1, x2 = rng.uniform(-2, 2), rng.uniform(-2, 2)
        jet = py.gauss3_jet(x1, x2)
        states.append(jet[1:] + (rng.uniform(-1, 1), rng.uniform(-1, 1)))

    def run():
        for f1, f2, f11, f12, f22, y1, y2 in states:
            k.spray_tilde(f1, f2, f11, f12, f22, y1, y2, 0.76, 0.7, 0.8)
    return run


def bench_ray(k, T):
    def run():
        k.integrate_builtin(py.SURF_GAUSS3, 0.0, 0.0, 0.0, 0.9, -0.4, 0.76, 0.7, 0.8,
                            1e-3, int(T / 1e-3), 1.0, 5.0, False)
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--n", type=int, default=20000)
    args = ap.parse_args()
    samples = _samples(args.n)
    cases = [
        (f"phi_root x{args.n}", lambda k: bench_roots(k, samples)),
        (f"spray_tilde x{args.n}", lambda k: bench_spray(k, args.n)),
        ("gauss3 ray T=2 dt=1e-3", lambda k: bench_ray(k, 2.0)),
    ]
    print(f"{'case':<26}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, make in cases:
        tp = _best(make(py), args.repeat)
        if cy is None:
            print(f"{name:<26}{tp:12.4f}{'n/a':>12}{'n/a':>10}")
            continue
        tc = _best(make(cy), args.repeat)
        print(f"{name:<26}{tp:12.4f}{tc:12.4f}{tp / tc:10.1f}")


if __name__ == "__main__":
    main()
