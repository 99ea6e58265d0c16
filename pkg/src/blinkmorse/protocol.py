"""Line-delimited wire protocol for frames in and events out.

One JSON object per line, UTF-8, LF. Frame lines:

    {"t":1.000,"ear":0.31}
    {"t":1.033,"left":[[x,y],...6],"right":[[x,y],...6]}
    {"t":1.067}                      <- tracking lost

Event lines carry ``"event"`` of symbol | ignored | letter | invalid |
word_break | blink. Timestamps and durations serialize at millisecond
resolution, which keeps outputs diffable and is far below any decoding
threshold.
"""

from __future__ import annotations

import json
import re

import numpy as np

from .detect import BlinkEvent
from .decoder import (
    BlinkIgnored,
    DecoderEvent,
    InvalidSequence,
    LetterCommitted,
    SymbolAppended,
    WordBreak,
)
from .ear import FrameSample
from .errors import ProtocolError

_MORSE_RE = re.compile(r"^[.\-]*$")
# Bare ".5"-style floats some producers emit; JSON proper requires "0.5".
_LEADING_DOT_RE = re.compile(r"(?<=[\[,:\s])\.(?=\d)")


def _loads(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        try:
            obj = json.loads(_LEADING_DOT_RE.sub("0.", text))
        except json.JSONDecodeError:
            raise ProtocolError(exc.msg, offset=exc.pos) from None
    if not isinstance(obj, dict):
        raise ProtocolError("expected a JSON object")
    return obj


def _field(obj: dict, key: str, kinds, what: str):
    value = obj.get(key)
    if not isinstance(value, kinds) or isinstance(value, bool):
        raise ProtocolError(f"{what}: field {key!r} missing or wrong type")
    return value


def _eye(obj: dict, key: str) -> np.ndarray | None:
    raw = obj.get(key)
    if raw is None:
        return None
    ok = (
        isinstance(raw, list)
        and len(raw) == 6
        and all(
            isinstance(p, list)
            and len(p) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p)
            for p in raw
        )
    )
    if not ok:
        raise ProtocolError(f"field {key!r} must be 6 [x,y] pairs")
    return np.asarray(raw, dtype=float)


def parse_frame_line(text: str) -> FrameSample:
    """Parse one frame line. Unknown fields are ignored."""
    obj = _loads(text)
    t = float(_field(obj, "t", (int, float), "frame"))
    ear = obj.get("ear")
    if ear is not None and (isinstance(ear, bool) or not isinstance(ear, (int, float))):
        raise ProtocolError("frame: field 'ear' must be a number")
    return FrameSample(
        t=t,
        left=_eye(obj, "left"),
        right=_eye(obj, "right"),
        ear=None if ear is None else float(ear),
    )


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _fmt_coord(value: float) -> str:
    return json.dumps(round(float(value), 6))


def serialize_frame_line(frame: FrameSample) -> str:
    parts = [f'"t":{_fmt(frame.t)}']
    if frame.ear is not None:
        parts.append(f'"ear":{_fmt_coord(frame.ear)}')
    for key, eye in (("left", frame.left), ("right", frame.right)):
        if eye is not None:
            pairs = ",".join(f"[{_fmt_coord(x)},{_fmt_coord(y)}]" for x, y in eye)
            parts.append(f'"{key}":[{pairs}]')
    return "{" + ",".join(parts) + "}"


def serialize_event_line(event: DecoderEvent | BlinkEvent) -> str:
    if isinstance(event, BlinkEvent):
        return (
            f'{{"event":"blink","start":{_fmt(event.start_s)},"end":{_fmt(event.end_s)},'
            f'"duration":{_fmt(event.duration_s)},"t":{_fmt(event.end_s)}}}'
        )
    if isinstance(event, SymbolAppended):
        return f'{{"event":"symbol","symbol":"{event.symbol}","t":{_fmt(event.at_s)}}}'
    if isinstance(event, BlinkIgnored):
        return f'{{"event":"ignored","duration":{_fmt(event.duration_s)},"t":{_fmt(event.at_s)}}}'
    if isinstance(event, LetterCommitted):
        char = json.dumps(event.char)
        return f'{{"event":"letter","char":{char},"code":"{event.code}","t":{_fmt(event.at_s)}}}'
    if isinstance(event, InvalidSequence):
        return f'{{"event":"invalid","code":"{event.code}","t":{_fmt(event.at_s)}}}'
    if isinstance(event, WordBreak):
        return f'{{"event":"word_break","t":{_fmt(event.at_s)}}}'
    raise TypeError(f"not a wire event: {event!r}")


def _code_field(obj: dict, what: str) -> str:
    code = _field(obj, "code", str, what)
    if not _MORSE_RE.match(code):
        raise ProtocolError(f"{what}: field 'code' must contain only '.' and '-'")
    return code


def parse_event_line(text: str) -> DecoderEvent | BlinkEvent:
    obj = _loads(text)
    kind = _field(obj, "event", str, "event")
    if kind == "blink":
        return BlinkEvent(
            start_s=float(_field(obj, "start", (int, float), "blink")),
            end_s=float(_field(obj, "end", (int, float), "blink")),
            duration_s=float(_field(obj, "duration", (int, float), "blink")),
        )
    t = float(_field(obj, "t", (int, float), "event"))
    if kind == "symbol":
        symbol = _field(obj, "symbol", str, "symbol")
        if symbol not in (".", "-"):
            raise ProtocolError("symbol: field 'symbol' must be '.' or '-'")
        return SymbolAppended(symbol, t)
    if kind == "ignored":
        return BlinkIgnored(float(_field(obj, "duration", (int, float), "ignored")), t)
    if kind == "letter":
        char = _field(obj, "char", str, "letter")
        if len(char) != 1:
            raise ProtocolError("letter: field 'char' must be one character")
        return LetterCommitted(char, _code_field(obj, "letter"), t)
    if kind == "invalid":
        return InvalidSequence(_code_field(obj, "invalid"), t)
    if kind == "word_break":
        return WordBreak(t)
    raise ProtocolError(f"unknown event kind {kind!r}")


def frames_equal(a: FrameSample, b: FrameSample) -> bool:
    """Field-wise equality (ndarray-safe); helper for round-trip checks."""

    def eyes_equal(x, y):
        if x is None or y is None:
            return x is None and y is None
        return np.array_equal(x, y)

    return (
        a.t == b.t
        and a.ear == b.ear
        and eyes_equal(a.left, b.left)
        and eyes_equal(a.right, b.right)
    )
