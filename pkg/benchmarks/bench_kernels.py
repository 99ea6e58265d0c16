"""Time the numba-compiled kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [n_frames]

Both paths run the identical function body (see blinkmorse.kernels), so
this measures exactly the JIT speedup on the two hot loops: batch EAR
over landmark arrays and hysteresis blink-span extraction over an EAR
trace. Setting BLINKMORSE_NUMBA=0 at import time is what selects the
fallback in production; here the two implementations are timed
side by side.
"""

import sys
import time

import numpy as np

from blinkmorse import kernels


def time_fn(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2_000_000
    if kernels._ear_batch_jit is None:
        print("numba unavailable or disabled; nothing to compare")
        return 1
    rng = np.random.default_rng(0)

    pts = rng.uniform(0.2, 0.6, size=(n, 6, 2))
    pts[:, 3, 0] = pts[:, 0, 0] + 0.1
    out = np.empty(n)
    kernels._ear_batch_jit(pts[:10], out[:10])  # pay compilation up front

    ts = np.cumsum(rng.uniform(0.02, 0.05, size=n))
    ears = np.where(rng.random(n) < 0.3, 0.08, 0.32) + rng.normal(0, 0.01, n)
    spans = np.empty((n // 2 + 1, 2))
    kernels._blink_spans_jit(ts[:10], ears[:10], 0.21, 0.24, 0.05, 0.5, spans)

    rows = []
    for name, py_fn, jit_fn, args in [
        ("ear_batch", kernels._ear_batch_py, kernels._ear_batch_jit, (pts, out)),
        (
            "blink_spans",
            kernels._blink_spans_py,
            kernels._blink_spans_jit,
            (ts, ears, 0.21, 0.24, 0.05, 0.5, spans),
        ),
    ]:
        t_py = time_fn(py_fn, *args, repeats=2)
        t_jit = time_fn(jit_fn, *args)
        rows.append((name, t_py, t_jit, t_py / t_jit))

    print(f"n = {n} frames")
    print(f"{'kernel':<14}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>10}")
    for name, t_py, t_jit, speedup in rows:
        print(f"{name:<14}{t_py:>12.4f}{t_jit:>12.4f}{speedup:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
