"""Command-line entry point.

Subcommands: calibrate, decode, replay, simulate, analyze, fixture.
Exit codes are a stable scripting contract: 0 success, 1 I/O failure,
2 empty/insufficient data, 3 protocol error, 4 usage or unsupported
input.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .detect import (
    DEFAULT_MIN_CLOSURE_S,
    DEFAULT_TRACKING_LOSS_TIMEOUT_S,
    BlinkEvent,
    DetectorConfig,
    calibrate,
)
from .engine import Engine, TcpLineSource, replay
from .errors import (
    BlinkMorseError,
    DegenerateEye,
    EmptyCalibration,
    EmptyStudy,
    IoFailure,
    MalformedCsv,
    NonMonotonicTimestamp,
    ProtocolError,
    UnsupportedCharacter,
)
from .fixture import write_fixture
from .morse import TimingConfig
from .protocol import parse_frame_line, serialize_event_line, serialize_frame_line
from .simulate import SimProfile, simulate_blink_events, simulate_ear_trace
from .trials import (
    BlinkLogRow,
    append_blinks_csv,
    append_trials_csv,
    evaluate_trial,
    read_trials_csv,
    summarize,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_EMPTY = 2
EXIT_PROTOCOL = 3
EXIT_USAGE = 4

CONFIG_KEYS = (
    "close_threshold",
    "open_threshold",
    "min_closure_s",
    "tracking_loss_timeout_s",
    "dot_min_s",
    "dash_min_s",
    "letter_gap_s",
    "word_gap_s",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors follow the exit-code contract
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_config(path) -> dict[str, float]:
    """Flat key = value text, '#' comments; unknown keys rejected."""
    values: dict[str, float] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read config {path}: {exc}") from exc
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise ProtocolError(f"bad config line: {line!r}", line_no=line_no)
        try:
            values[key] = float(raw.strip())
        except ValueError:
            raise ProtocolError(f"config {key}: not a number", line_no=line_no) from None
    return values


def write_config(path, detector: DetectorConfig, timing: TimingConfig) -> None:
    lines = ["# blinkmorse engine configuration"]
    pairs = [
        ("close_threshold", detector.close_threshold),
        ("open_threshold", detector.open_threshold),
        ("min_closure_s", detector.min_closure_s),
        ("tracking_loss_timeout_s", detector.tracking_loss_timeout_s),
        ("dot_min_s", timing.dot_min_s),
        ("dash_min_s", timing.dash_min_s),
        ("letter_gap_s", timing.letter_gap_s),
        ("word_gap_s", timing.word_gap_s),
    ]
    lines += [f"{key} = {value:.6f}" for key, value in pairs]
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write config {path}: {exc}") from exc


def _add_config_flags(p: _Parser):
    p.add_argument("--config", help="config file written by 'calibrate'")
    g = p.add_argument_group("threshold overrides")
    g.add_argument("--close-threshold", type=float, dest="close_threshold")
    g.add_argument("--open-threshold", type=float, dest="open_threshold")
    g.add_argument("--min-closure", type=float, dest="min_closure_s")
    g.add_argument("--tracking-loss-timeout", type=float, dest="tracking_loss_timeout_s")
    g.add_argument("--dot-min", type=float, dest="dot_min_s")
    g.add_argument("--dash-min", type=float, dest="dash_min_s")
    g.add_argument("--letter-gap", type=float, dest="letter_gap_s")
    g.add_argument("--word-gap", type=float, dest="word_gap_s")


def _merged_configs(args) -> tuple[DetectorConfig, TimingConfig]:
    values: dict[str, float] = {}
    if getattr(args, "config", None):
        values.update(read_config(args.config))
    for key in CONFIG_KEYS:
        override = getattr(args, key, None)
        if override is not None:
            values[key] = override
    detector = DetectorConfig(
        **{k: values[k] for k in CONFIG_KEYS[:4] if k in values}
    )
    timing = TimingConfig(**{k: values[k] for k in CONFIG_KEYS[4:] if k in values})
    return detector, timing


def _frames_from_file(source: str):
    if source == "-":
        for line_no, line in enumerate(sys.stdin, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield parse_frame_line(line)
            except ProtocolError as exc:
                raise ProtocolError(exc.reason, exc.offset, line_no) from None
    else:
        yield from replay(source, mode="frames")


def _emit(line: str, sink: TcpLineSource | None):
    sys.stdout.write(line + "\n")
    sys.stdout.flush()
    if sink is not None:
        sink.send(line)


def cmd_calibrate(args) -> int:
    report = calibrate(_frames_from_file(args.source))
    print(
        f"calibration: quality={report.quality} open_median={report.open_median:.3f} "
        f"closed_median={report.closed_median:.3f} "
        f"close_threshold={report.config.close_threshold:.3f} "
        f"open_threshold={report.config.open_threshold:.3f} "
        f"frames={report.n_frames} closures={report.n_closures}",
        file=sys.stderr,
    )
    if report.quality != "ok":
        print(
            "calibration unusable; decode falls back to the default thresholds",
            file=sys.stderr,
        )
        return EXIT_EMPTY
    if args.out:
        write_config(args.out, report.config, TimingConfig())
        print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def _run_pipeline(frames, detector_cfg, timing_cfg, sink=None, realtime=False):
    eng = Engine(detector_cfg, timing_cfg)
    prev_t = None
    for frame in frames:
        if realtime and prev_t is not None and frame.t > prev_t:
            time.sleep(frame.t - prev_t)
        prev_t = frame.t
        for event in eng.on_frame(frame):
            _emit(serialize_event_line(event), sink)
    for event in eng.finish():
        _emit(serialize_event_line(event), sink)
    return eng


def _log_trial(args, eng: Engine):
    out_dir = Path(args.out or ".")
    started = eng.started_at_s if eng.started_at_s is not None else 0.0
    ended = eng.last_letter_at_s if eng.last_letter_at_s is not None else started
    record = evaluate_trial(
        args.target, eng.transcript, started, ended, args.trial, args.participant
    )
    append_trials_csv(out_dir / "trials.csv", [record])
    rows = [
        BlinkLogRow(args.trial, args.participant, b.start_s, b.end_s, b.duration_s, label)
        for b, label in eng.blink_log
    ]
    append_blinks_csv(out_dir / "blinks.csv", rows)
    print(f"logged trial {args.trial} ({'correct' if record.correct else 'incorrect'})",
          file=sys.stderr)


def cmd_decode(args) -> int:
    detector_cfg, timing_cfg = _merged_configs(args)
    sink = None
    try:
        if args.port is not None:
            sink = TcpLineSource(args.port)
            print(f"listening on {sink.host}:{sink.port}", file=sys.stderr)
            frames = (parse_frame_line(line) for line in sink.lines())
        else:
            frames = _frames_from_file(args.source)
        eng = _run_pipeline(frames, detector_cfg, timing_cfg, sink, args.realtime)
    finally:
        if sink is not None:
            sink.close()
    print(f"transcript: {eng.transcript}", file=sys.stderr)
    if args.target is not None:
        _log_trial(args, eng)
    return EXIT_OK


def cmd_replay(args) -> int:
    detector_cfg, timing_cfg = _merged_configs(args)
    if args.mode == "frames":
        eng = _run_pipeline(
            replay(args.source, "frames"), detector_cfg, timing_cfg, realtime=args.realtime
        )
    else:
        eng = Engine(detector_cfg, timing_cfg)
        for item in replay(args.source, "events"):
            if isinstance(item, BlinkEvent):
                for event in eng.on_blink(item):
                    _emit(serialize_event_line(event), None)
        for event in eng.finish():
            _emit(serialize_event_line(event), None)
    print(f"transcript: {eng.transcript}", file=sys.stderr)
    return EXIT_OK


def cmd_simulate(args) -> int:
    profile = SimProfile(
        dot_s=args.dot_s,
        dash_s=args.dash_s,
        intra_gap_s=args.intra_gap,
        letter_gap_s=args.letter_pause,
        word_gap_s=args.word_pause,
        open_ear=args.open_ear,
        closed_ear=args.closed_ear,
        fps=args.fps,
        noise_sigma=args.noise,
        seed=args.seed,
    )
    if args.mode == "events":
        lines = [serialize_event_line(ev) for ev in simulate_blink_events(args.message, profile)]
    else:
        lines = [serialize_frame_line(fr) for fr in simulate_ear_trace(args.message, profile)]
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.out and args.out != "-":
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot write {args.out}: {exc}") from exc
        print(f"wrote {len(lines)} {args.mode} lines to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    records = read_trials_csv(args.trials_csv)
    summary = summarize(records)
    from .report import emit_report  # matplotlib import deferred to here

    emit_report(summary, args.out)
    for p in summary.participants:
        print(
            f"{p.participant_id}: mean_rt={p.mean_response_time_s:.3f}s "
            f"correct={p.n_correct}/{p.n_correct + p.n_incorrect} "
            f"accuracy={p.accuracy_pct:.1f}%"
        )
    print(f"overall accuracy: {summary.overall_accuracy_pct:.1f}%")
    print(f"report written to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_fixture(args) -> int:
    records = write_fixture(args.out)
    print(f"wrote {len(records)} fixture trials to {args.out}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="blinkmorse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="derive per-user thresholds from a frame recording")
    p.add_argument("--source", default="-", help="frames file, or - for stdin")
    p.add_argument("--out", help="config file to write on success")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("decode", help="run frames through the full pipeline")
    p.add_argument("--source", default="-", help="frames file, or - for stdin")
    p.add_argument("--port", type=int, help="listen for one TCP client instead of --source")
    p.add_argument("--target", help="expected message; enables trial logging")
    p.add_argument("--participant", default="P1")
    p.add_argument("--trial", type=int, default=1)
    p.add_argument("--out", help="directory for trials.csv / blinks.csv (default .)")
    p.add_argument("--realtime", action="store_true", help="pace by timestamps (demo only)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("replay", help="re-run a recorded frames or events file")
    p.add_argument("--source", required=True)
    p.add_argument("--mode", choices=("frames", "events"), default="frames")
    p.add_argument("--realtime", action="store_true")
    _add_config_flags(p)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("simulate", help="synthesize blink events or an EAR trace")
    p.add_argument("message")
    p.add_argument("--mode", choices=("frames", "events"), default="frames")
    p.add_argument("--out", default="-", help="output file, or - for stdout")
    p.add_argument("--dot-s", type=float, default=SimProfile.dot_s)
    p.add_argument("--dash-s", type=float, default=SimProfile.dash_s)
    p.add_argument("--intra-gap", type=float, default=SimProfile.intra_gap_s)
    p.add_argument("--letter-pause", type=float, default=SimProfile.letter_gap_s)
    p.add_argument("--word-pause", type=float, default=SimProfile.word_gap_s)
    p.add_argument("--open-ear", type=float, default=SimProfile.open_ear)
    p.add_argument("--closed-ear", type=float, default=SimProfile.closed_ear)
    p.add_argument("--fps", type=float, default=SimProfile.fps)
    p.add_argument("--noise", type=float, default=SimProfile.noise_sigma)
    p.add_argument("--seed", type=int, default=SimProfile.seed)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="summarize a trials CSV and emit charts")
    p.add_argument("trials_csv")
    p.add_argument("--out", default="report", help="output directory")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fixture", help="write the bundled 5x10 study dataset")
    p.add_argument("--out", default="fixture_trials.csv")
    p.set_defaults(func=cmd_fixture)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EmptyCalibration, EmptyStudy) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (ProtocolError, MalformedCsv, NonMonotonicTimestamp, DegenerateEye) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    except UnsupportedCharacter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IoFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BlinkMorseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
