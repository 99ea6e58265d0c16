"""Webcam capture and live operator console for the blinkmorse engine.

Pure view + frame producer: all decoding happens engine-side; this
package talks to it only over the line protocol (frames out, events in).
"""

from .console import ConsoleState, render
from .link import EngineLink, SessionClock
from .mesh import MeshMapping, extract_eyes
from .wire import format_frame_line, parse_event

__version__ = "0.1.0"

__all__ = [
    "ConsoleState",
    "EngineLink",
    "MeshMapping",
    "SessionClock",
    "extract_eyes",
    "format_frame_line",
    "parse_event",
    "render",
]
