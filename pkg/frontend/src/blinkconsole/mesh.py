"""Selecting the six EAR landmarks per eye from a 468-point face mesh.

The engine's ordering contract for each eye is p1 outer corner, p2/p3
upper eyelid, p4 inner corner, p5/p6 lower eyelid (p6 under p2, p5
under p3). Mesh index conventions change between upstream versions, so
the mapping ships as editable configuration rather than code.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

# MediaPipe FaceMesh indices in the engine's p1..p6 order. "left"/"right"
# are the subject's left and right eyes.
DEFAULT_LEFT = (362, 385, 387, 263, 373, 380)
DEFAULT_RIGHT = (33, 160, 158, 133, 153, 144)

MESH_SIZE = 468


@dataclass(frozen=True)
class MeshMapping:
    left: tuple[int, ...] = DEFAULT_LEFT
    right: tuple[int, ...] = DEFAULT_RIGHT

    def __post_init__(self):
        for name, indices in (("left", self.left), ("right", self.right)):
            if len(indices) != 6 or len(set(indices)) != 6:
                raise ValueError(f"{name} mapping needs 6 distinct indices")
            if any(i < 0 for i in indices):
                raise ValueError(f"{name} mapping has negative indices")

    @classmethod
    def from_json(cls, path) -> "MeshMapping":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(left=tuple(data["left"]), right=tuple(data["right"]))

    def to_json(self, path) -> None:
        Path(path).write_text(
            json.dumps({"left": list(self.left), "right": list(self.right)}, indent=2)
            + "\n",
            encoding="utf-8",
        )


def _point(landmark):
    # mediapipe landmarks expose .x/.y; arrays and tuples index directly
    if hasattr(landmark, "x"):
        return float(landmark.x), float(landmark.y)
    return float(landmark[0]), float(landmark[1])


def _select(landmarks, indices):
    points = []
    for i in indices:
        if i >= len(landmarks):
            return None
        x, y = _point(landmarks[i])
        if not (math.isfinite(x) and math.isfinite(y)):
            return None  # occluded/garbage eye: absence is a value
        points.append((x, y))
    return points


def extract_eyes(mesh_landmarks, mapping: MeshMapping | None = None):
    """Map one frame of face-mesh output to (left, right) eye landmark
    lists in protocol order; either eye is None when unavailable, both
    None when no face was detected."""
    if mesh_landmarks is None:
        return None, None
    mapping = mapping or MeshMapping()
    return _select(mesh_landmarks, mapping.left), _select(mesh_landmarks, mapping.right)
