import socket
import threading

import pytest

from blinkmorse.decoder import LetterCommitted
from blinkmorse.detect import BlinkEvent
from blinkmorse.engine import Engine, TcpLineSource, decode_frames, replay
from blinkmorse.errors import IoFailure, ProtocolError
from blinkmorse.protocol import parse_event_line, serialize_event_line, serialize_frame_line
from blinkmorse.simulate import SimProfile, simulate_blink_events, simulate_ear_trace
from conftest import random_message


def test_end_to_end_sos():
    transcript, events = decode_frames(simulate_ear_trace("SOS"))
    assert transcript == "SOS"
    blinks = [e for e in events if isinstance(e, BlinkEvent)]
    assert len(blinks) == 9
    letters = [e for e in events if isinstance(e, LetterCommitted)]
    assert letters[-1].at_s == pytest.approx(19.0)


def test_end_to_end_help():
    transcript, _ = decode_frames(simulate_ear_trace("HELP"))
    assert transcript == "HELP"


def test_no_frames_is_empty_transcript():
    transcript, events = decode_frames([])
    assert transcript == ""
    assert events == []


def test_engine_ticks_only_while_open():
    # whole-closure frames must not commit the letter the blink belongs to
    eng = Engine()
    trace = simulate_ear_trace("I")  # two dots, 0.4 s apart
    events = []
    for frame in trace:
        events.extend(eng.on_frame(frame))
    events.extend(eng.finish())
    assert eng.transcript == "I"
    # the commit happened at flush, not mid-closure
    letters = [e for e in events if isinstance(e, LetterCommitted)]
    assert len(letters) == 1


def test_engine_blink_log_classifications():
    eng = Engine()
    for frame in simulate_ear_trace("A"):  # dot dash
        eng.on_frame(frame)
    eng.finish()
    assert [label for _, label in eng.blink_log] == ["dot", "dash"]


def test_started_and_last_letter_timestamps():
    eng = Engine()
    for frame in simulate_ear_trace("SOS"):
        eng.on_frame(frame)
    eng.finish()
    assert eng.started_at_s == 0.0
    assert eng.last_letter_at_s == pytest.approx(19.0)


def test_random_messages_round_trip(rng):
    for _ in range(15):
        msg = random_message(rng)
        transcript, _ = decode_frames(simulate_ear_trace(msg))
        assert transcript == msg


def test_replay_frames_file_equals_memory(tmp_path, rng):
    msg = random_message(rng)
    trace = simulate_ear_trace(msg)
    path = tmp_path / "frames.jsonl"
    path.write_text(
        "".join(serialize_frame_line(f) + "\n" for f in trace), encoding="utf-8"
    )
    from_file = list(replay(path, "frames"))
    transcript_file, _ = decode_frames(from_file)
    transcript_mem, _ = decode_frames(trace)
    assert transcript_file == transcript_mem == msg


def test_replay_events_file(tmp_path):
    events = simulate_blink_events("SOS")
    path = tmp_path / "events.jsonl"
    path.write_text(
        "".join(serialize_event_line(e) + "\n" for e in events), encoding="utf-8"
    )
    eng = Engine()
    for item in replay(path, "events"):
        if isinstance(item, BlinkEvent):
            eng.on_blink(item)
    eng.finish()
    assert eng.transcript == "SOS"


def test_replay_corrupt_line_numbered(tmp_path):
    path = tmp_path / "frames.jsonl"
    lines = [serialize_frame_line(f) for f in simulate_ear_trace("E")]
    lines[6] = '{"t":oops}'
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(ProtocolError) as exc_info:
        list(replay(path, "frames"))
    assert exc_info.value.line_no == 7
    assert "line 7" in str(exc_info.value)


def test_replay_missing_file():
    with pytest.raises(IoFailure):
        list(replay("/nonexistent/frames.jsonl", "frames"))


def test_replay_bad_mode():
    with pytest.raises(ValueError):
        list(replay("whatever", "nonsense"))


def test_tcp_round_trip():
    trace = simulate_ear_trace("SOS")
    received: list[str] = []

    with TcpLineSource(0) as source:

        def client():
            with socket.create_connection((source.host, source.port)) as sock:
                reader = sock.makefile("r", encoding="utf-8")
                for frame in trace:
                    sock.sendall((serialize_frame_line(frame) + "\n").encode())
                sock.shutdown(socket.SHUT_WR)
                received.extend(line.strip() for line in reader)

        thread = threading.Thread(target=client)
        thread.start()
        eng = Engine()
        from blinkmorse.protocol import parse_frame_line

        for line in source.lines():
            for event in eng.on_frame(parse_frame_line(line)):
                source.send(serialize_event_line(event))
        thread.join(timeout=10)

    assert not thread.is_alive()
    eng.finish()
    assert eng.transcript == "SOS"
    kinds = [type(parse_event_line(line)).__name__ for line in received]
    assert "BlinkEvent" in kinds
    assert kinds.count("LetterCommitted") == 2  # final S commits at flush, after EOF
