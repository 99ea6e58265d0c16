"""Operator console entry point.

Two loops: capture/send pushes frame lines to the engine over TCP, and
receive/render updates the console from the engine's event lines. The
render loop owns the ConsoleState; the capture loop only hands it the
latest EAR reading through a small queue, so it never blocks on drawing.
"""

from __future__ import annotations

import argparse
import json
import queue
import sys
import threading
import time

from rich.live import Live

from .console import ConsoleState, render
from .link import EngineLink, SessionClock
from .mesh import MeshMapping
from .wire import format_frame_line, parse_event


def _parse_endpoint(spec: str) -> tuple[str, int]:
    host, sep, port = spec.rpartition(":")
    if not sep:
        raise ValueError(f"--engine expects host:port, got {spec!r}")
    return host or "127.0.0.1", int(port)


def _capture_loop(args, link: EngineLink, frame_queue: queue.Queue, stop: threading.Event,
                  state: ConsoleState):
    if args.frames:
        _replay_file_loop(args.frames, link, frame_queue, stop)
        return
    from .capture import capture_frames, open_camera, open_face_mesh

    mapping = MeshMapping.from_json(args.mesh_config) if args.mesh_config else MeshMapping()
    camera = open_camera(args.camera_index)
    mesh = open_face_mesh()

    def camera_lost():
        state.banner = "camera lost: check the device"

    try:
        for line in capture_frames(camera, mesh, mapping, mirror=args.mirror,
                                   on_camera_loss=camera_lost):
            if stop.is_set():
                break
            if not link.send_line(line):
                state.banner = "engine connection lost, reconnecting"
                if not link.connect(retries=3):
                    continue
                state.banner = ""
                link.send_line(line)
            frame_queue.put(line)
    finally:
        camera.release()


def _replay_file_loop(path, link, frame_queue, stop, pace=True):
    # demo without a camera: stream a recorded/simulated frames file
    prev_t = None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or stop.is_set():
                continue
            try:
                t = json.loads(line).get("t")
            except json.JSONDecodeError:
                continue
            if pace and prev_t is not None and isinstance(t, (int, float)) and t > prev_t:
                time.sleep(min(t - prev_t, 0.5))
            prev_t = t if isinstance(t, (int, float)) else prev_t
            link.send_line(line)
            frame_queue.put(line)
    # a camera would keep running after the last blink; advance the clock a
    # little so the final pending letter commits while we can still see it
    if prev_t is not None:
        for i in range(1, 21):
            if stop.is_set():
                break
            if pace:
                time.sleep(0.1)
            link.send_line(f'{{"t":{prev_t + 0.1 * i:.3f}}}')
    link.finish_sending()  # engine flushes and closes; the render loop exits


def run_console(args, link: EngineLink) -> str:
    state = ConsoleState(close_threshold=args.close_threshold,
                         open_threshold=args.open_threshold)
    frame_queue: queue.Queue = queue.Queue()
    stop = threading.Event()
    capture = threading.Thread(
        target=_capture_loop, args=(args, link, frame_queue, stop, state), daemon=True
    )
    capture.start()

    refresh = 20  # console reflects events well inside 100 ms
    try:
        with Live(render(state), refresh_per_second=refresh, screen=False) as live:
            for line in link.events():
                event = parse_event(line)
                if args.audio_cue and event.get("event") == "symbol":
                    sys.stderr.write("\a")
                    sys.stderr.flush()
                state.on_event(event)
                while True:
                    try:
                        frame = json.loads(frame_queue.get_nowait())
                    except queue.Empty:
                        break
                    except json.JSONDecodeError:
                        continue
                    state.on_frame(frame.get("t", state.local_t), frame.get("ear"))
                live.update(render(state))
    finally:
        stop.set()
        link.close()
    return state.transcript


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="blinkconsole", description=__doc__)
    parser.add_argument("--engine", default="127.0.0.1:9377", help="engine host:port")
    parser.add_argument("--camera-index", type=int, default=0)
    parser.add_argument("--mirror", action="store_true")
    parser.add_argument("--mesh-config", help="JSON file overriding the face-mesh indices")
    parser.add_argument("--frames", help="stream a recorded frames file instead of a camera")
    parser.add_argument("--close-threshold", type=float, default=0.21,
                        help="threshold line drawn on the EAR display")
    parser.add_argument("--open-threshold", type=float, default=0.24)
    parser.add_argument("--audio-cue", action="store_true",
                        help="terminal bell on each appended symbol (off by default)")
    args = parser.parse_args(argv)

    host, port = _parse_endpoint(args.engine)
    link = EngineLink(host, port)
    print(f"connecting to engine at {host}:{port} ...", file=sys.stderr)
    if not link.connect(retries=20):
        print("engine unreachable", file=sys.stderr)
        return 1
    transcript = run_console(args, link)
    print(f"session transcript: {transcript}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
