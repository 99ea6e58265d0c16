"""Eye Aspect Ratio from six eye landmarks.

Landmark ordering contract for one eye, as (x, y) rows of a (6, 2)
array: index 0 (p1) outer corner, 3 (p4) inner corner, 1/2 (p2, p3)
upper eyelid, 5/4 (p6, p5) the lower-eyelid points vertically opposite
p2/p3. Coordinates are normalized image units; values slightly outside
[0, 1] are fine.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEye


def compute_ear(points) -> float:
    """EAR = (|p2-p6| + |p3-p5|) / (2 |p1-p4|) over Euclidean distances.

    ``points`` is array-like of shape (6, 2) in the module's ordering
    contract. Raises DegenerateEye when the horizontal width |p1-p4| is
    zero (corrupt landmarks).
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape != (6, 2):
        raise ValueError(f"expected 6 (x, y) landmarks, got shape {pts.shape}")
    v1 = np.hypot(*(pts[1] - pts[5]))
    v2 = np.hypot(*(pts[2] - pts[4]))
    h = np.hypot(*(pts[0] - pts[3]))
    if h == 0.0:
        raise DegenerateEye("zero horizontal eye width (p1 == p4)")
    return float((v1 + v2) / (2.0 * h))


@dataclass(frozen=True, eq=False)
class FrameSample:
    """One timestamped observation from the landmark producer.

    ``left`` / ``right`` are (6, 2) landmark arrays, ``ear`` a
    producer-precomputed EAR that takes precedence over landmarks.
    A frame with none of the three is a tracking-lost marker.
    """

    t: float
    left: np.ndarray | None = None
    right: np.ndarray | None = None
    ear: float | None = None

    @property
    def tracking_lost(self) -> bool:
        return self.left is None and self.right is None and self.ear is None


def frame_ear(frame: FrameSample) -> float | None:
    """EAR for one frame: the override if present, else the mean over
    whichever eyes are present, else None (tracking lost)."""
    if frame.ear is not None:
        return frame.ear
    ears = [compute_ear(eye) for eye in (frame.left, frame.right) if eye is not None]
    if not ears:
        return None
    return sum(ears) / len(ears)
