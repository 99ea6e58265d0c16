import pytest

from blinkmorse.cli import EXIT_EMPTY, EXIT_IO, EXIT_OK, EXIT_PROTOCOL, EXIT_USAGE, main, read_config
from blinkmorse.detect import DetectorConfig
from blinkmorse.morse import TimingConfig
from blinkmorse.protocol import serialize_frame_line
from blinkmorse.simulate import SimProfile, simulate_ear_trace
from blinkmorse.trials import read_blinks_csv, read_trials_csv


def write_trace(path, message, profile=None):
    trace = simulate_ear_trace(message, profile)
    path.write_text("".join(serialize_frame_line(f) + "\n" for f in trace), encoding="utf-8")
    return path


def calibration_trace(path):
    # alternating 1 s open / 1.2 s closed, 5 closures at 0.32 / 0.10
    lines = []
    t = 0.0
    for _ in range(5):
        for _ in range(20):
            lines.append(f'{{"t":{t:.3f},"ear":0.32}}')
            t += 0.05
        for _ in range(24):
            lines.append(f'{{"t":{t:.3f},"ear":0.10}}')
            t += 0.05
    for _ in range(20):
        lines.append(f'{{"t":{t:.3f},"ear":0.32}}')
        t += 0.05
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_calibrate_writes_config(tmp_path, capsys):
    src = calibration_trace(tmp_path / "cal.jsonl")
    cfg_path = tmp_path / "engine.cfg"
    assert main(["calibrate", "--source", str(src), "--out", str(cfg_path)]) == EXIT_OK
    values = read_config(cfg_path)
    assert values["close_threshold"] == pytest.approx(0.21)
    assert values["open_threshold"] == pytest.approx(0.24)
    assert "calibration: quality=ok" in capsys.readouterr().err


def test_calibrate_all_open_exits_2(tmp_path, capsys):
    src = tmp_path / "cal.jsonl"
    src.write_text("".join(f'{{"t":{i * 0.05:.3f},"ear":0.32}}\n' for i in range(100)))
    assert main(["calibrate", "--source", str(src)]) == EXIT_EMPTY
    assert "insufficient_closures" in capsys.readouterr().err


def test_calibrate_missing_source_exits_1(tmp_path):
    assert main(["calibrate", "--source", str(tmp_path / "nope.jsonl")]) == EXIT_IO


def test_calibrate_empty_input_exits_2(tmp_path):
    src = tmp_path / "cal.jsonl"
    src.write_text("")
    assert main(["calibrate", "--source", str(src)]) == EXIT_EMPTY


def test_decode_logs_trial(tmp_path, capsys):
    src = write_trace(tmp_path / "sos.jsonl", "SOS")
    out = tmp_path / "logs"
    code = main(
        [
            "decode", "--source", str(src), "--target", "SOS",
            "--participant", "A", "--trial", "3", "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    captured = capsys.readouterr()
    assert "transcript: SOS" in captured.err
    assert '{"event":"letter","char":"S"' in captured.out
    records = read_trials_csv(out / "trials.csv")
    assert len(records) == 1
    assert records[0].correct and records[0].participant_id == "A"
    assert records[0].response_time_s == pytest.approx(19.0, abs=1e-3)
    blinks = read_blinks_csv(out / "blinks.csv")
    assert len(blinks) == 9
    assert {b.classification for b in blinks} == {"dot", "dash"}


def test_decode_help_transcript(tmp_path, capsys):
    src = write_trace(tmp_path / "help.jsonl", "HELP")
    assert main(["decode", "--source", str(src)]) == EXIT_OK
    assert "transcript: HELP" in capsys.readouterr().err


def test_decode_no_frames_exit_0(tmp_path, capsys):
    src = tmp_path / "empty.jsonl"
    src.write_text("")
    assert main(["decode", "--source", str(src)]) == EXIT_OK
    assert "transcript: \n" in capsys.readouterr().err


def test_decode_config_file_and_overrides(tmp_path, capsys):
    from blinkmorse.cli import write_config

    cfg_path = tmp_path / "engine.cfg"
    write_config(cfg_path, DetectorConfig(0.15, 0.18), TimingConfig())
    # trace blinks at 0.10 stay below 0.15: detected
    src = write_trace(tmp_path / "sos.jsonl", "SOS", SimProfile(closed_ear=0.10))
    assert main(["decode", "--source", str(src), "--config", str(cfg_path)]) == EXIT_OK
    assert "transcript: SOS" in capsys.readouterr().err
    # flag override pushes close threshold below the closed EAR: nothing detected
    assert (
        main(
            [
                "decode", "--source", str(src), "--config", str(cfg_path),
                "--close-threshold", "0.05", "--open-threshold", "0.08",
            ]
        )
        == EXIT_OK
    )
    assert "transcript: \n" in capsys.readouterr().err


def test_decode_protocol_error_exit_3(tmp_path):
    src = tmp_path / "bad.jsonl"
    src.write_text('{"t":0.0,"ear":0.3}\nnot json\n')
    assert main(["decode", "--source", str(src)]) == EXIT_PROTOCOL


def test_replay_frames(tmp_path, capsys):
    src = write_trace(tmp_path / "sos.jsonl", "SOS")
    assert main(["replay", "--source", str(src)]) == EXIT_OK
    assert "transcript: SOS" in capsys.readouterr().err


def test_replay_events_mode(tmp_path, capsys):
    src = tmp_path / "events.jsonl"
    assert main(["simulate", "SOS", "--mode", "events", "--out", str(src)]) == EXIT_OK
    assert main(["replay", "--source", str(src), "--mode", "events"]) == EXIT_OK
    assert "transcript: SOS" in capsys.readouterr().err


def test_simulate_deterministic(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["simulate", "SOS", "--seed", "1", "--out", str(a)]) == EXIT_OK
    assert main(["simulate", "SOS", "--seed", "1", "--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_simulate_help_event_count(tmp_path):
    out = tmp_path / "events.jsonl"
    assert main(["simulate", "HELP", "--mode", "events", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 13


def test_simulate_unsupported_char_exit_4(tmp_path):
    assert main(["simulate", "SOS!", "--out", str(tmp_path / "x.jsonl")]) == EXIT_USAGE


def test_simulate_stdout(capsys):
    assert main(["simulate", "E", "--mode", "events"]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 1
    assert '"event":"blink"' in out[0]


def test_fixture_then_analyze(tmp_path, capsys):
    csv_path = tmp_path / "study.csv"
    report_dir = tmp_path / "report"
    assert main(["fixture", "--out", str(csv_path)]) == EXIT_OK
    assert main(["analyze", str(csv_path), "--out", str(report_dir)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "overall accuracy: 64.0%" in out
    acc = (report_dir / "accuracy_pct.csv").read_text().strip().splitlines()
    assert acc[1:] == ["A,70.000", "B,60.000", "C,60.000", "D,70.000", "E,60.000"]
    # participant D fastest, E slowest
    rows = (report_dir / "avg_response_time.csv").read_text().strip().splitlines()[1:]
    means = {line.split(",")[0]: float(line.split(",")[1]) for line in rows}
    assert min(means, key=means.get) == "D"
    assert max(means, key=means.get) == "E"


def test_analyze_empty_csv_exit_2(tmp_path):
    from blinkmorse.trials import write_trials_csv

    path = tmp_path / "empty.csv"
    write_trials_csv(path, [])
    assert main(["analyze", str(path), "--out", str(tmp_path / "r")]) == EXIT_EMPTY


def test_analyze_missing_file_exit_1(tmp_path):
    assert main(["analyze", str(tmp_path / "nope.csv"), "--out", str(tmp_path)]) == EXIT_IO


def test_usage_error_exit_4(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["decode", "--nonsense"])
    assert exc_info.value.code == EXIT_USAGE


def test_stdin_source(tmp_path, capsys, monkeypatch):
    import io

    trace = simulate_ear_trace("E")
    text = "".join(serialize_frame_line(f) + "\n" for f in trace)
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert main(["decode"]) == EXIT_OK
    assert "transcript: E" in capsys.readouterr().err


def test_decode_tcp_client(capsys):
    import socket
    import threading

    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]

    codes = {}
    server = threading.Thread(
        target=lambda: codes.setdefault("exit", main(["decode", "--port", str(port)]))
    )
    server.start()
    frames = simulate_ear_trace("SOS")
    received = []
    for _ in range(50):  # wait for the listener
        try:
            sock = socket.create_connection(("127.0.0.1", port), timeout=0.2)
            break
        except OSError:
            import time

            time.sleep(0.05)
    with sock:
        reader = sock.makefile("r", encoding="utf-8")
        for frame in frames:
            sock.sendall((serialize_frame_line(frame) + "\n").encode())
        sock.shutdown(socket.SHUT_WR)
        received = [line for line in reader]
    server.join(timeout=10)
    assert not server.is_alive()
    assert codes["exit"] == EXIT_OK
    assert any('"event":"letter","char":"S"' in line for line in received)
    assert "transcript: SOS" in capsys.readouterr().err
