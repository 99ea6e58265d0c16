"""Frontend side of the engine's line protocol.

Frames out, events in; one JSON object per line, UTF-8, LF. This module
deliberately does not import the engine package: the wire format is the
whole contract.
"""

from __future__ import annotations

import json


def format_frame_line(t: float, left=None, right=None, ear: float | None = None) -> str:
    parts = [f'"t":{t:.3f}']
    if ear is not None:
        parts.append(f'"ear":{json.dumps(round(float(ear), 6))}')
    for key, eye in (("left", left), ("right", right)):
        if eye is not None:
            pairs = ",".join(
                f"[{json.dumps(round(float(x), 6))},{json.dumps(round(float(y), 6))}]"
                for x, y in eye
            )
            parts.append(f'"{key}":[{pairs}]')
    return "{" + ",".join(parts) + "}"


def parse_event(line: str) -> dict:
    """Parse one engine event line into a dict.

    Never raises: anything unparseable (or a non-object) comes back as
    ``{"event": "unknown", "raw": <line>}`` so the console can display
    it verbatim instead of crashing.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError:
        return {"event": "unknown", "raw": line}
    if not isinstance(obj, dict) or not isinstance(obj.get("event"), str):
        return {"event": "unknown", "raw": line}
    return obj
