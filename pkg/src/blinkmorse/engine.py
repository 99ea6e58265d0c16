"""Pipeline glue: frames in, blink + decoder events out.

The engine serializes everything onto the producer's timestamps: each
frame first advances the blink detector, completed blinks go to the
decoder, and then the decoder's gap clock ticks at the frame time - but
only while the eye is open. Ticking during a closure would measure the
pause as still running through the blink and could commit a letter the
in-flight blink belongs to.
"""

from __future__ import annotations

import socket
from pathlib import Path

from .decoder import DecoderEvent, LetterCommitted, LiveDecoder
from .detect import BlinkDetector, BlinkEvent, DetectorConfig
from .ear import FrameSample, frame_ear
from .errors import IoFailure, ProtocolError
from .morse import TimingConfig, classification_label, classify_blink
from .protocol import parse_event_line, parse_frame_line

WireEvent = BlinkEvent | DecoderEvent


class Engine:
    def __init__(
        self,
        detector_cfg: DetectorConfig | None = None,
        timing_cfg: TimingConfig | None = None,
    ):
        self.timing = timing_cfg or TimingConfig()
        self.detector = BlinkDetector(detector_cfg)
        self.decoder = LiveDecoder(self.timing)
        self.started_at_s: float | None = None
        self.last_letter_at_s: float | None = None
        # (blink, "dot"|"dash"|"ignored") in detection order, for logging
        self.blink_log: list[tuple[BlinkEvent, str]] = []

    @property
    def transcript(self) -> str:
        return self.decoder.transcript

    def _track(self, events: list[WireEvent]):
        for ev in events:
            if isinstance(ev, LetterCommitted):
                self.last_letter_at_s = ev.at_s

    def on_frame(self, frame: FrameSample) -> list[WireEvent]:
        if self.started_at_s is None:
            self.started_at_s = frame.t
        out: list[WireEvent] = []
        for blink in self.detector.step(frame.t, frame_ear(frame)):
            self.blink_log.append(
                (blink, classification_label(classify_blink(blink.duration_s, self.timing)))
            )
            out.append(blink)
            out.extend(self.decoder.on_blink(blink))
        if not self.detector.is_closed:
            out.extend(self.decoder.on_tick(frame.t))
        self._track(out)
        return out

    def on_blink(self, blink: BlinkEvent) -> list[WireEvent]:
        """Feed a pre-detected blink (events-file replay path)."""
        self.blink_log.append(
            (blink, classification_label(classify_blink(blink.duration_s, self.timing)))
        )
        events: list[WireEvent] = list(self.decoder.on_blink(blink))
        self._track(events)
        return events

    def finish(self) -> list[WireEvent]:
        self.detector.flush()
        events: list[WireEvent] = list(self.decoder.flush())
        self._track(events)
        return events


def decode_frames(frames) -> tuple[str, list[WireEvent]]:
    """Run a whole frame sequence through a fresh engine."""
    engine = Engine()
    events: list[WireEvent] = []
    for frame in frames:
        events.extend(engine.on_frame(frame))
    events.extend(engine.finish())
    return engine.transcript, events


def replay(path, mode: str = "frames"):
    """Yield parsed items from a recorded file, in file order.

    ``mode`` is "frames" or "events". Blank lines are skipped. A bad line
    raises ProtocolError carrying its 1-based line number. No real-time
    pacing: timestamps drive everything downstream.
    """
    if mode not in ("frames", "events"):
        raise ValueError(f"mode must be 'frames' or 'events', not {mode!r}")
    parse = parse_frame_line if mode == "frames" else parse_event_line
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    yield parse(line)
                except ProtocolError as exc:
                    raise ProtocolError(exc.reason, exc.offset, line_no) from None
    except OSError as exc:
        raise IoFailure(f"cannot read {Path(path)}: {exc}") from exc


class TcpLineSource:
    """Single-client TCP endpoint speaking the line protocol both ways.

    The engine listens; one client (the capture/console frontend)
    connects, streams frame lines, and receives event lines back on the
    same connection. The reader blocks rather than dropping frames.
    """

    def __init__(self, port: int, host: str = "127.0.0.1"):
        try:
            self._server = socket.create_server((host, port))
        except OSError as exc:
            raise IoFailure(f"cannot listen on {host}:{port}: {exc}") from exc
        self.host, self.port = self._server.getsockname()[:2]
        self._client: socket.socket | None = None

    def lines(self):
        """Accept one client and yield its lines until it disconnects."""
        self._client, _ = self._server.accept()
        with self._client, self._client.makefile("r", encoding="utf-8") as reader:
            for line in reader:
                line = line.strip()
                if line:
                    yield line
        self._client = None

    def send(self, line: str):
        if self._client is not None:
            try:
                self._client.sendall((line + "\n").encode("utf-8"))
            except OSError:
                self._client = None

    def close(self):
        if self._client is not None:
            self._client.close()
            self._client = None
        self._server.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
