"""Eye-blink Morse code engine.

Converts a timestamped eye-landmark stream into text: EAR computation,
hysteresis blink detection with per-user calibration, dot/dash
classification, a streaming timed Morse decoder, trial logging, and the
analysis/chart pipeline, plus a deterministic simulator used as the
round-trip oracle.
"""

from .detect import (
    BlinkDetector,
    BlinkEvent,
    CalibrationReport,
    DetectorConfig,
    calibrate,
    detect_blinks_array,
)
from .decoder import (
    BlinkIgnored,
    DecoderEvent,
    InvalidSequence,
    LetterCommitted,
    LiveDecoder,
    SymbolAppended,
    WordBreak,
)
from .ear import FrameSample, compute_ear, frame_ear
from .engine import Engine, decode_frames, replay
from .morse import (
    TimingConfig,
    classify_blink,
    decode_sequence,
    encode_char,
    encode_message,
)
from .simulate import SimProfile, simulate_blink_events, simulate_ear_trace
from .trials import (
    BlinkLogRow,
    ParticipantSummary,
    StudySummary,
    TrialRecord,
    evaluate_trial,
    read_trials_csv,
    summarize,
    write_trials_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BlinkDetector",
    "BlinkEvent",
    "BlinkIgnored",
    "BlinkLogRow",
    "CalibrationReport",
    "DecoderEvent",
    "DetectorConfig",
    "Engine",
    "FrameSample",
    "InvalidSequence",
    "LetterCommitted",
    "LiveDecoder",
    "ParticipantSummary",
    "SimProfile",
    "StudySummary",
    "SymbolAppended",
    "TimingConfig",
    "TrialRecord",
    "WordBreak",
    "calibrate",
    "classify_blink",
    "compute_ear",
    "decode_frames",
    "decode_sequence",
    "detect_blinks_array",
    "encode_char",
    "encode_message",
    "evaluate_trial",
    "frame_ear",
    "read_trials_csv",
    "replay",
    "simulate_blink_events",
    "simulate_ear_trace",
    "summarize",
    "write_trials_csv",
]
