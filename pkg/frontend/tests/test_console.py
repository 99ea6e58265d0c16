from rich.console import Console

from blinkconsole.console import ConsoleState, render
from blinkconsole.wire import parse_event


def feed(state, *lines):
    for line in lines:
        state.on_event(parse_event(line))


def test_letter_appends_and_clears_buffer():
    state = ConsoleState()
    feed(state, '{"event":"symbol","symbol":".","t":1.2}')
    feed(state, '{"event":"symbol","symbol":".","t":2.8}')
    assert state.pending == ".."
    feed(state, '{"event":"letter","char":"I","code":"..","t":4.0}')
    assert state.transcript == "I"
    assert state.pending == ""


def test_ignored_flash():
    state = ConsoleState()
    feed(state, '{"event":"ignored","duration":0.30,"t":5.0}')
    assert "too short" in state.flash
    assert state.pending == ""


def test_word_break_spaces_like_engine():
    state = ConsoleState()
    feed(state, '{"event":"letter","char":"S","code":"...","t":4.0}')
    feed(state, '{"event":"word_break","t":8.0}')
    assert state.transcript == "S"  # no trailing space until the next letter
    feed(state, '{"event":"letter","char":"O","code":"---","t":15.0}')
    assert state.transcript == "S O"


def test_leading_word_break_suppressed():
    state = ConsoleState()
    feed(state, '{"event":"word_break","t":1.0}')
    feed(state, '{"event":"letter","char":"A","code":".-","t":2.0}')
    assert state.transcript == "A"


def test_blink_event_drives_gap_timer():
    state = ConsoleState()
    feed(state, '{"event":"blink","start":1.0,"end":2.2,"duration":1.2,"t":2.2}')
    state.on_frame(2.8, 0.32)
    assert state.gap_s() == round(0.6, 10) or abs(state.gap_s() - 0.6) < 1e-9


def test_unknown_events_displayed_raw_never_crash():
    state = ConsoleState()
    feed(state, '{"event":"calibration_hint","level":3}', "not json at all", "[1,2]")
    assert len(state.raw_events) == 3
    assert "not json at all" in state.raw_events
    render(state)  # must not raise


def test_frames_update_ear_and_closed_flag():
    state = ConsoleState()
    state.on_frame(0.1, 0.32)
    assert not state.eye_closed
    state.on_frame(0.2, 0.10)
    assert state.eye_closed
    state.on_frame(0.3, None)
    assert state.ear is None
    assert len(state.ear_history) == 2
    assert state.local_t == 0.3


def test_render_smoke_all_states():
    console = Console(record=True, width=100)
    state = ConsoleState()
    console.print(render(state))  # fresh
    state.on_frame(0.1, 0.32)
    feed(
        state,
        '{"event":"blink","start":0.0,"end":1.2,"duration":1.2,"t":1.2}',
        '{"event":"symbol","symbol":"-","t":1.2}',
    )
    state.banner = "camera lost"
    console.print(render(state))
    text = console.export_text()
    assert "transcript" in text
    assert "camera lost" in text
