"""Drive the real engine over its TCP interface, console attached.

The engine is consumed strictly through its external surfaces: the
``blinkmorse`` CLI to produce a frame recording and to serve TCP, and
the line protocol on the socket. Nothing here imports the engine
package.
"""

import json
import shutil
import socket
import subprocess
import threading

import pytest

from blinkconsole.console import ConsoleState
from blinkconsole.link import EngineLink
from blinkconsole.wire import parse_event

pytestmark = pytest.mark.skipif(
    shutil.which("blinkmorse") is None, reason="engine CLI not installed"
)


def free_port():
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def padded_sos_frames(tmp_path):
    """Simulated SOS trace plus 2 s of trailing open frames, like a camera
    that keeps running after the last blink (lets the final letter commit
    while the client is still connected)."""
    path = tmp_path / "sos.jsonl"
    subprocess.run(
        ["blinkmorse", "simulate", "SOS", "--out", str(path)],
        check=True, capture_output=True,
    )
    lines = path.read_text().strip().splitlines()
    last = json.loads(lines[-1])  # trace ends on the reopen frame: eye open
    last_t, open_ear = last["t"], last["ear"]
    for i in range(1, 61):
        lines.append(f'{{"t":{last_t + i / 30:.3f},"ear":{open_ear}}}')
    path.write_text("\n".join(lines) + "\n")
    return path


def test_live_session_reproduces_sos(tmp_path):
    frames_path = padded_sos_frames(tmp_path)
    port = free_port()
    engine = subprocess.Popen(
        ["blinkmorse", "decode", "--port", str(port)],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True,
    )
    try:
        link = EngineLink("127.0.0.1", port)
        assert link.connect(retries=30)

        lines = frames_path.read_text().strip().splitlines()

        def pump():
            for line in lines:
                link.send_line(line)
            link.finish_sending()  # engine flushes and closes; reader sees EOF

        sender = threading.Thread(target=pump)
        sender.start()
        state = ConsoleState()
        kinds = []
        for line in link.events():
            event = parse_event(line)
            kinds.append(event["event"])
            state.on_event(event)
        sender.join(timeout=10)
        stdout, stderr = engine.communicate(timeout=10)
    finally:
        if engine.poll() is None:
            engine.kill()

    # engine side: full transcript, clean exit
    assert engine.returncode == 0
    assert "transcript: SOS" in stderr
    # console side: all three letters rendered from event lines alone
    assert state.transcript == "SOS"
    assert kinds.count("letter") == 3
    assert "blink" in kinds and "symbol" in kinds
    # the console never decoded: its view matches the engine's stdout log
    letters = [
        json.loads(line)["char"]
        for line in stdout.splitlines()
        if '"event":"letter"' in line
    ]
    assert "".join(letters) == "SOS"
