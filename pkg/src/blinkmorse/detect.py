"""Hysteresis blink detection over an EAR stream, plus per-user calibration.

The detector closes when EAR drops below ``close_threshold`` and reopens
when it rises above ``open_threshold``; the gap between the two absorbs
noise at the boundary. A closure shorter than ``min_closure_s`` is
dropped as single-frame noise, and a closure that loses tracking for
longer than ``tracking_loss_timeout_s`` is abandoned so a lost face
cannot fabricate a long blink.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ear import FrameSample, frame_ear
from .errors import EmptyCalibration, NonMonotonicTimestamp
from .kernels import blink_spans

# Absolute fallbacks used when calibration is unavailable; in line with
# commonly reported EAR operating points.
DEFAULT_CLOSE_THRESHOLD = 0.21
DEFAULT_OPEN_THRESHOLD = 0.24
DEFAULT_MIN_CLOSURE_S = 0.05
DEFAULT_TRACKING_LOSS_TIMEOUT_S = 0.5

# open_threshold sits this far above close_threshold when derived.
HYSTERESIS_GAP = 0.03

# Calibration quality gates.
MIN_CLOSURES = 3
MIN_SEPARATION = 0.08


@dataclass(frozen=True)
class DetectorConfig:
    close_threshold: float = DEFAULT_CLOSE_THRESHOLD
    open_threshold: float = DEFAULT_OPEN_THRESHOLD
    min_closure_s: float = DEFAULT_MIN_CLOSURE_S
    tracking_loss_timeout_s: float = DEFAULT_TRACKING_LOSS_TIMEOUT_S

    def __post_init__(self):
        if not self.open_threshold > self.close_threshold:
            raise ValueError("open_threshold must exceed close_threshold")
        if self.min_closure_s <= 0:
            raise ValueError("min_closure_s must be positive")
        if self.tracking_loss_timeout_s <= 0:
            raise ValueError("tracking_loss_timeout_s must be positive")


@dataclass(frozen=True)
class BlinkEvent:
    """One detected eye closure, seconds on the producer's clock."""

    start_s: float
    end_s: float
    duration_s: float

    def __post_init__(self):
        if not self.end_s > self.start_s:
            raise ValueError("end_s must exceed start_s")
        if abs(self.duration_s - (self.end_s - self.start_s)) > 2e-3:
            raise ValueError("duration_s inconsistent with start/end")

    @classmethod
    def from_span(cls, start_s: float, end_s: float) -> "BlinkEvent":
        return cls(start_s, end_s, end_s - start_s)


class BlinkDetector:
    """Sequential state machine turning (t, ear) samples into BlinkEvents.

    Feed one sample per frame via :meth:`step`; ``ear=None`` marks a
    tracking-lost frame. Timestamps come from the producer, never a wall
    clock, so replays are bit-reproducible.
    """

    def __init__(self, cfg: DetectorConfig | None = None):
        self.cfg = cfg or DetectorConfig()
        self._closed_since: float | None = None
        self._last_valid_t: float | None = None
        self._last_t: float | None = None

    @property
    def is_closed(self) -> bool:
        return self._closed_since is not None

    def step(self, t: float, ear: float | None) -> list[BlinkEvent]:
        """Advance by one frame; returns the blinks completed at this frame."""
        if self._last_t is not None and t < self._last_t:
            raise NonMonotonicTimestamp(f"t={t} after t={self._last_t}")
        self._last_t = t

        events: list[BlinkEvent] = []
        if ear is None:
            if (
                self._closed_since is not None
                and self._last_valid_t is not None
                and t - self._last_valid_t > self.cfg.tracking_loss_timeout_s
            ):
                self._closed_since = None  # abandoned, never emitted
            return events

        if self._closed_since is None:
            if ear < self.cfg.close_threshold:
                self._closed_since = t
        else:
            if ear > self.cfg.open_threshold:
                duration = t - self._closed_since
                if duration >= self.cfg.min_closure_s:
                    events.append(BlinkEvent(self._closed_since, t, duration))
                self._closed_since = None
        self._last_valid_t = t
        return events

    def flush(self) -> list[BlinkEvent]:
        """End of stream: discard any open closure and reset. Returns []."""
        self._closed_since = None
        self._last_valid_t = None
        self._last_t = None
        return []


def detect_blinks_array(
    ts: np.ndarray, ears: np.ndarray, cfg: DetectorConfig | None = None
) -> list[BlinkEvent]:
    """Batch twin of BlinkDetector over whole arrays (NaN = tracking lost).

    Backed by the compiled kernel; produces exactly the streaming events.
    """
    cfg = cfg or DetectorConfig()
    spans = blink_spans(
        ts,
        ears,
        cfg.close_threshold,
        cfg.open_threshold,
        cfg.min_closure_s,
        cfg.tracking_loss_timeout_s,
    )
    return [BlinkEvent.from_span(s, e) for s, e in spans]


@dataclass(frozen=True)
class CalibrationReport:
    open_median: float
    closed_median: float
    config: DetectorConfig
    n_frames: int
    n_closures: int
    quality: str  # "ok" | "insufficient_closures" | "low_separation"


def _split_two_clusters(values: np.ndarray) -> int:
    """Index k that splits sorted values into [0:k) / [k:n) minimizing the
    summed within-cluster variance (exhaustive 1-D two-cluster partition)."""
    n = values.size
    if n < 2:
        return n
    v = values
    pre = np.concatenate(([0.0], np.cumsum(v)))
    pre2 = np.concatenate(([0.0], np.cumsum(v * v)))
    ks = np.arange(1, n)
    lo_n = ks.astype(float)
    hi_n = (n - ks).astype(float)
    lo_ss = pre2[ks] - pre[ks] ** 2 / lo_n
    hi_ss = (pre2[n] - pre2[ks]) - (pre[n] - pre[ks]) ** 2 / hi_n
    cost = lo_ss + hi_ss
    return int(ks[np.argmin(cost)])


def calibrate(
    frames,
    min_closure_s: float = DEFAULT_MIN_CLOSURE_S,
    tracking_loss_timeout_s: float = DEFAULT_TRACKING_LOSS_TIMEOUT_S,
) -> CalibrationReport:
    """Derive per-user thresholds from a short recording.

    The EAR samples are partitioned into an open and a closed cluster;
    ``close_threshold`` is the midpoint of the two cluster medians and
    ``open_threshold`` sits HYSTERESIS_GAP above it. Quality degrades to
    ``insufficient_closures`` when replaying the recording at the derived
    thresholds finds fewer than 3 blinks, or ``low_separation`` when the
    medians are less than 0.08 apart.
    """
    ts: list[float] = []
    ears: list[float] = []
    for frame in frames:
        value = frame_ear(frame)
        if value is None:
            continue
        ts.append(frame.t)
        ears.append(value)
    if not ears:
        raise EmptyCalibration("no frames with a usable EAR value")

    values = np.sort(np.asarray(ears, dtype=float))
    k = _split_two_clusters(values)
    if k == 0 or k >= values.size:
        closed_median = open_median = float(np.median(values))
    else:
        closed_median = float(np.median(values[:k]))
        open_median = float(np.median(values[k:]))

    close_threshold = (open_median + closed_median) / 2.0
    cfg = DetectorConfig(
        close_threshold=close_threshold,
        open_threshold=close_threshold + HYSTERESIS_GAP,
        min_closure_s=min_closure_s,
        tracking_loss_timeout_s=tracking_loss_timeout_s,
    )
    closures = detect_blinks_array(
        np.asarray(ts, dtype=float), np.asarray(ears, dtype=float), cfg
    )

    if len(closures) < MIN_CLOSURES:
        quality = "insufficient_closures"
    elif open_median - closed_median < MIN_SEPARATION:
        quality = "low_separation"
    else:
        quality = "ok"
    return CalibrationReport(
        open_median=open_median,
        closed_median=closed_median,
        config=cfg,
        n_frames=len(ears),
        n_closures=len(closures),
        quality=quality,
    )
