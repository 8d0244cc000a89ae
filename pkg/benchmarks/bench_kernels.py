"""Time the compiled kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat R] [--json PATH]

Compilation happens in a warm-up call that is not timed.  Each row also
reports the largest relative disagreement between the two backends on the timed
inputs.
"""
import argparse
import json
import math
import timeit

import numpy as np

from symqent import kernels


def _cases(rng):
    out = []
    for n in (8, 20):
        c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        radius = (abs(c[0]) / abs(c[-1])) ** (1.0 / n)
        z0 = radius * np.exp(1j * (2 * math.pi * np.arange(n) / n + 0.4))
        out.append((f"aberth n={n}", "aberth", (c, z0, 1000, 1e-13),
                    lambda r: np.sort_complex(r[0])))
    for dim in (5, 13, 21):
        h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = h + h.conj().T
        out.append((f"jacobi_eigh dim={dim}", "jacobi_eigh", (h, 1e-14, 100), lambda r: r[0]))
    op = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    for n in (8, 20):
        out.append((f"sym_power n={n}", "sym_power", (op, n), lambda r: r))
    for n, pts in ((8, 8192), (20, 8192)):
        w = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        th = rng.uniform(0, math.pi, pts)
        ph = rng.uniform(0, 2 * math.pi, pts)
        x = np.cos(th / 2).astype(np.complex128)
        y = np.sin(th / 2) * np.exp(-1j * ph)
        out.append((f"homogeneous_eval n={n} pts={pts}", "homogeneous_eval", (w, x, y), lambda r: r))
    return out


def run(repeat: int = 5, seed: int = 0):
    if kernels.jit is None:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(seed)
    rows = []
    for label, name, args, key in _cases(rng):
        fj = getattr(kernels.jit, name)
        fn = getattr(kernels.numpy_impl, name)
        rj, rn = fj(*args), fn(*args)  # warm-up and compile
        diff = float(np.max(np.abs(key(rj) - key(rn))) / max(1.0, np.max(np.abs(key(rn)))))
        number = 20
        tj = min(timeit.repeat(lambda: fj(*args), number=number, repeat=repeat)) / number
        tn = min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number
        rows.append({"kernel": label, "numba_us": tj * 1e6, "numpy_us": tn * 1e6,
                     "speedup": tn / tj, "max_diff": diff})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", default=None)
    args = ap.parse_args()
    rows = run(args.repeat)
    print(f"{'kernel':34s} {'numba [us]':>12s} {'numpy [us]':>12s} {'speedup':>8s} {'rel diff':>10s}")
    for r in rows:
        print(f"{r['kernel']:34s} {r['numba_us']:12.1f} {r['numpy_us']:12.1f} "
              f"{r['speedup']:8.1f} {r['max_diff']:10.2e}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
