"""Compare the numba kernels with their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat N]

Per-kernel timings use the same inputs for both versions and check that the results agree.
The end-to-end line runs the flagship problem in a subprocess per backend.
"""
import argparse
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from translattice.geometry import _kernels as K


def timeit(fn, *args, repeat=2000):
    fn(*args)  # warm-up (and JIT compile)
    t = time.perf_counter()
    for _ in range(repeat):
        out = fn(*args)
    return (time.perf_counter() - t) / repeat, out


def inputs(rng, n=6, m=4, segs=200):
    C = rng.normal(size=(n + 1, m + 1)) + 1j * rng.normal(size=(n + 1, m + 1))
    z = complex(0.3, 0.1)
    a, da = K.coeffs_at_np(C, z)
    y = np.roots(a[::-1]).astype(np.complex128)
    y0 = y + 1e-6 * (rng.normal(size=n) + 1j * rng.normal(size=n))
    P = np.cumsum(rng.normal(size=segs + 1) + 1j * rng.normal(size=segs + 1)) / 10
    Q = np.cumsum(rng.normal(size=segs + 1) + 1j * rng.normal(size=segs + 1)) / 10
    return {
        "coeffs_at": (C, z),
        "velocity": (a, da, y),
        "newton": (a, y0, 4, 1e-12),
        "min_gap": (y,),
        "segment_candidates": (P[:-1], P[1:], Q[:-1], Q[1:], 0.01),
    }


def agree(x, y):
    if isinstance(x, tuple):
        return all(agree(p, q) for p, q in zip(x, y))
    return np.allclose(np.asarray(x), np.asarray(y), rtol=1e-9, atol=1e-12)


def end_to_end(backend: str) -> float:
    env = dict(os.environ, TRANSLATTICE_DISABLE_NUMBA="1" if backend == "numpy" else "0")
    problem = Path(K.__file__).parents[1] / "data" / "double_sextic_a10a9.toml"
    code = ("import time; from translattice.pipeline import compute, load_problem; "
            f"p = load_problem({str(problem)!r}); compute(p); t = time.perf_counter(); compute(p); "
            "print(time.perf_counter() - t)")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(res.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        print("numba unavailable or disabled; nothing to compare")
        return
    data = inputs(np.random.default_rng(0))
    print(f"{'kernel':<20}{'numpy us':>12}{'numba us':>12}{'speedup':>10}  agree")
    for name, args_ in data.items():
        t_np, r_np = timeit(getattr(K, name + "_np"), *[x.copy() if isinstance(x, np.ndarray) else x for x in args_],
                            repeat=args.repeat)
        t_nb, r_nb = timeit(getattr(K, name + "_nb"), *[x.copy() if isinstance(x, np.ndarray) else x for x in args_],
                            repeat=args.repeat)
        print(f"{name:<20}{t_np * 1e6:>12.2f}{t_nb * 1e6:>12.2f}{t_np / t_nb:>10.1f}  {agree(r_np, r_nb)}")
    if not args.skip_end_to_end:
        t_np, t_nb = end_to_end("numpy"), end_to_end("numba")
        print(f"{'flagship pipeline':<20}{t_np * 1e3:>10.0f}ms{t_nb * 1e3:>10.0f}ms{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
