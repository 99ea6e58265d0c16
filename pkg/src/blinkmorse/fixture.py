"""Bundled synthetic trial log: 5 participants x 10 trials.

Trials 1-5 target "SOS", 6-10 "HELP". Correct counts per participant are
A:7 B:6 C:6 D:7 E:6 (32/50 = 64 % overall); per-participant mean
response times fall in [18, 20] s with D fastest and E slowest, and the
HELP phase spikes at trial 6 before partially recovering. Everything is
computed from fixed tables, so the file is identical on every run.
"""

from __future__ import annotations

from .trials import TrialRecord, evaluate_trial, write_trials_csv

PARTICIPANTS = ["A", "B", "C", "D", "E"]
SOS_TRIALS = (1, 2, 3, 4, 5)
HELP_TRIALS = (6, 7, 8, 9, 10)

_TARGETS = {**{t: "SOS" for t in SOS_TRIALS}, **{t: "HELP" for t in HELP_TRIALS}}

# Trials decoded incorrectly, per participant (totals 7/6/6/7/6 correct).
_WRONG_TRIALS = {
    "A": (5, 6, 9),
    "B": (3, 6, 7, 10),
    "C": (2, 6, 8, 9),
    "D": (6, 7, 10),
    "E": (1, 4, 6, 8),
}

# Plausible mistimed decodes: held/dropped/added symbols, one invalid.
_WRONG_SOS = ("SOI", "SOU", "HOS")
_WRONG_HELP = ("HEL?", "HELJ", "5ELP", "HLP")

# Mean response time = base + 1.57 (phase offsets sum to 15.7, wobble to 0):
# A 19.2, B 19.4, C 19.5, D 18.3 (min), E 19.8 (max).
_BASE_RT = {"A": 17.63, "B": 17.83, "C": 17.93, "D": 16.73, "E": 18.23}

# Slight practice effect within SOS; HELP spikes then partially recovers.
_PHASE_OFFSET = (0.0, -0.3, -0.5, -0.2, -0.4, 4.6, 3.8, 3.2, 2.9, 2.6)

# Zero-sum jitter rotated per participant so means stay exact.
_WOBBLE = (0.2, -0.1, 0.1, -0.2, 0.0, -0.1, 0.2, -0.2, 0.1, 0.0)

_REST_BETWEEN_TRIALS_S = 30.0


def _wrong_transcript(pid: str, trial_no: int) -> str:
    wrongs = _WRONG_TRIALS[pid]
    pool = _WRONG_SOS if trial_no in SOS_TRIALS else _WRONG_HELP
    nth = sum(1 for t in wrongs if t < trial_no and (t in SOS_TRIALS) == (trial_no in SOS_TRIALS))
    return pool[nth % len(pool)]


def fixture_records() -> list[TrialRecord]:
    records = []
    for p_idx, pid in enumerate(PARTICIPANTS):
        started = 0.0
        for trial_no in range(1, 11):
            target = _TARGETS[trial_no]
            rt = round(
                _BASE_RT[pid]
                + _PHASE_OFFSET[trial_no - 1]
                + _WOBBLE[(trial_no - 1 + p_idx) % 10],
                3,
            )
            transcript = (
                _wrong_transcript(pid, trial_no) if trial_no in _WRONG_TRIALS[pid] else target
            )
            ended = round(started + rt, 3)
            records.append(
                evaluate_trial(target, transcript, started, ended, trial_no, pid)
            )
            started = round(ended + _REST_BETWEEN_TRIALS_S, 3)
    return records


def write_fixture(path) -> list[TrialRecord]:
    records = fixture_records()
    write_trials_csv(path, records)
    return records
