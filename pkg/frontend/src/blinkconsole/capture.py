"""Webcam capture feeding the engine: camera -> face mesh -> frame lines.

cv2 and mediapipe import lazily so the console, mapping, and link layers
work (and test) on machines without them; this module is only touched by
the live camera path.
"""

from __future__ import annotations

from .link import SessionClock
from .mesh import MeshMapping, extract_eyes
from .wire import format_frame_line


def open_face_mesh():
    try:
        import mediapipe as mp
    except ImportError as exc:
        raise RuntimeError(
            "live capture needs mediapipe (pip install blinkconsole[camera])"
        ) from exc
    return mp.solutions.face_mesh.FaceMesh(
        max_num_faces=1, refine_landmarks=False,
        min_detection_confidence=0.5, min_tracking_confidence=0.5,
    )


def open_camera(index: int):
    try:
        import cv2
    except ImportError as exc:
        raise RuntimeError(
            "live capture needs opencv (pip install blinkconsole[camera])"
        ) from exc
    cam = cv2.VideoCapture(index)
    if not cam.isOpened():
        raise RuntimeError(f"cannot open camera {index}")
    return cam


def capture_frames(camera, face_mesh, mapping: MeshMapping, mirror: bool = False,
                   clock: SessionClock | None = None, on_camera_loss=None):
    """Yield protocol frame lines at camera rate, monotone timestamps.

    A failed read or absent face becomes a tracking-lost line rather
    than a gap, so the engine's clock keeps advancing.
    """
    import cv2

    clock = clock or SessionClock()
    while True:
        ok, image = camera.read()
        t = clock.timestamp()
        if not ok:
            if on_camera_loss is not None:
                on_camera_loss()
            yield format_frame_line(t)
            continue
        if mirror:
            image = cv2.flip(image, 1)
        result = face_mesh.process(cv2.cvtColor(image, cv2.COLOR_BGR2RGB))
        faces = getattr(result, "multi_face_landmarks", None)
        if not faces:
            yield format_frame_line(t)
            continue
        left, right = extract_eyes(faces[0].landmark, mapping)
        yield format_frame_line(t, left=left, right=right)
