"""Batch kernels for the hot numeric paths: EAR over landmark arrays and
hysteresis blink-span extraction over an EAR time series.

The kernels are plain numpy loops compiled with numba's ``@njit`` by
default. Setting ``BLINKMORSE_NUMBA=0`` (or numba being unimportable)
selects the uncompiled pure-numpy path; both paths run the identical
function body, so results are bit-equal. ``benchmarks/bench_kernels.py``
times one against the other.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .errors import DegenerateEye, NonMonotonicTimestamp


def _numba_enabled() -> bool:
    flag = os.environ.get("BLINKMORSE_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


if _numba_enabled():
    try:
        from numba import njit as _njit
        _BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _njit = None
        _BACKEND = "numpy"
else:
    _njit = None
    _BACKEND = "numpy"


def active_backend() -> str:
    """Which kernel path is live: "numba" or "numpy"."""
    return _BACKEND


def _ear_batch_impl(pts, out):
    # pts: (n, 6, 2) float64; out: (n,). Writes -1.0 where |p1-p4| == 0.
    # Distances use the sqrt form rather than hypot so the jit and python
    # paths are bit-equal (CPython's hypot rounds differently); the
    # coordinates are normalized image units, so overflow is no concern.
    for i in range(pts.shape[0]):
        dx = pts[i, 1, 0] - pts[i, 5, 0]
        dy = pts[i, 1, 1] - pts[i, 5, 1]
        v1 = math.sqrt(dx * dx + dy * dy)
        dx = pts[i, 2, 0] - pts[i, 4, 0]
        dy = pts[i, 2, 1] - pts[i, 4, 1]
        v2 = math.sqrt(dx * dx + dy * dy)
        dx = pts[i, 0, 0] - pts[i, 3, 0]
        dy = pts[i, 0, 1] - pts[i, 3, 1]
        h = math.sqrt(dx * dx + dy * dy)
        if h == 0.0:
            out[i] = -1.0
        else:
            out[i] = (v1 + v2) / (2.0 * h)


def _blink_spans_impl(ts, ears, close_t, open_t, min_closure, timeout, out):
    # ears: NaN marks a tracking-lost frame. out: (n//2+1, 2). Returns the
    # number of spans written. Mirrors detect.BlinkDetector exactly.
    m = 0
    closed = False
    since = 0.0
    has_valid = False
    last_valid_t = 0.0
    for i in range(ts.shape[0]):
        t = ts[i]
        e = ears[i]
        if math.isnan(e):
            if closed and has_valid and (t - last_valid_t) > timeout:
                closed = False
            continue
        if not closed:
            if e < close_t:
                closed = True
                since = t
        else:
            if e > open_t:
                if t - since >= min_closure:
                    out[m, 0] = since
                    out[m, 1] = t
                    m += 1
                closed = False
        has_valid = True
        last_valid_t = t
    return m


_ear_batch_py = _ear_batch_impl
_blink_spans_py = _blink_spans_impl

if _njit is not None:
    _ear_batch_jit = _njit(cache=True)(_ear_batch_impl)
    _blink_spans_jit = _njit(cache=True)(_blink_spans_impl)
    _ear_batch = _ear_batch_jit
    _blink_spans = _blink_spans_jit
else:
    _ear_batch_jit = None
    _blink_spans_jit = None
    _ear_batch = _ear_batch_py
    _blink_spans = _blink_spans_py


def ear_batch(points: np.ndarray) -> np.ndarray:
    """EAR for a batch of eye landmark frames, shape (n, 6, 2) -> (n,).

    Raises DegenerateEye if any frame has zero horizontal width.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 3 or pts.shape[1:] != (6, 2):
        raise ValueError(f"expected shape (n, 6, 2), got {pts.shape}")
    out = np.empty(pts.shape[0], dtype=np.float64)
    _ear_batch(pts, out)
    if (out < 0.0).any():
        bad = int(np.argmax(out < 0.0))
        raise DegenerateEye(f"zero horizontal eye width at frame index {bad}")
    return out


def blink_spans(
    ts: np.ndarray,
    ears: np.ndarray,
    close_threshold: float,
    open_threshold: float,
    min_closure_s: float,
    tracking_loss_timeout_s: float,
) -> np.ndarray:
    """Blink (start, end) spans from an EAR time series, shape (m, 2).

    NaN entries in ``ears`` are tracking-lost frames. Timestamps must be
    non-decreasing. Produces the same spans as streaming the series
    through :class:`blinkmorse.detect.BlinkDetector`.
    """
    t = np.ascontiguousarray(ts, dtype=np.float64)
    e = np.ascontiguousarray(ears, dtype=np.float64)
    if t.shape != e.shape or t.ndim != 1:
        raise ValueError("ts and ears must be 1-D arrays of equal length")
    if t.size > 1 and (np.diff(t) < 0).any():
        bad = int(np.argmax(np.diff(t) < 0)) + 1
        raise NonMonotonicTimestamp(f"timestamp regressed at index {bad}")
    out = np.empty((t.size // 2 + 1, 2), dtype=np.float64)
    m = _blink_spans(
        t, e, close_threshold, open_threshold, min_closure_s, tracking_loss_timeout_s, out
    )
    return out[:m].copy()
