"""Trial evaluation, CSV logging, and per-participant summary statistics.

trials.csv column order is fixed:
trial_no,participant_id,target,transcript,correct,response_time_s,
started_at_s,ended_at_s,edit_distance - booleans as true/false, numbers
with 3 decimals, UTF-8, LF. blinks.csv:
trial_no,participant_id,start_s,end_s,duration_s,classification.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyStudy, IoFailure, MalformedCsv, NegativeDuration

TRIALS_COLUMNS = [
    "trial_no",
    "participant_id",
    "target",
    "transcript",
    "correct",
    "response_time_s",
    "started_at_s",
    "ended_at_s",
    "edit_distance",
]

BLINKS_COLUMNS = [
    "trial_no",
    "participant_id",
    "start_s",
    "end_s",
    "duration_s",
    "classification",
]

CLASSIFICATIONS = ("dot", "dash", "ignored")


@dataclass(frozen=True)
class TrialRecord:
    trial_no: int
    participant_id: str
    target: str
    transcript: str
    correct: bool
    response_time_s: float
    started_at_s: float
    ended_at_s: float
    edit_distance: int


@dataclass(frozen=True)
class BlinkLogRow:
    trial_no: int
    participant_id: str
    start_s: float
    end_s: float
    duration_s: float
    classification: str


def normalize(text: str) -> str:
    return text.strip().upper()


def levenshtein(a: str, b: str) -> int:
    """Character-level edit distance (informational column only)."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def evaluate_trial(
    target: str,
    transcript: str,
    started_at_s: float,
    ended_at_s: float,
    trial_no: int,
    participant_id: str,
) -> TrialRecord:
    """Score one trial: whole-message exact match after uppercasing and
    trimming surrounding whitespace; response time is ended - started."""
    if ended_at_s < started_at_s:
        raise NegativeDuration(f"trial ended at {ended_at_s} before start {started_at_s}")
    tgt, got = normalize(target), normalize(transcript)
    return TrialRecord(
        trial_no=trial_no,
        participant_id=participant_id,
        target=target,
        transcript=transcript,
        correct=tgt == got,
        response_time_s=ended_at_s - started_at_s,
        started_at_s=started_at_s,
        ended_at_s=ended_at_s,
        edit_distance=levenshtein(tgt, got),
    )


def _num(value: float) -> str:
    return f"{value:.3f}"


def _atomic_write(path, text: str):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def _parse_int(raw: str, column: str, line_no: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise MalformedCsv(f"column {column!r}: not an integer: {raw!r}", line_no) from None


def _parse_float(raw: str, column: str, line_no: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise MalformedCsv(f"column {column!r}: not a number: {raw!r}", line_no) from None
    if value != value:  # NaN never round-trips cleanly
        raise MalformedCsv(f"column {column!r}: NaN not allowed", line_no)
    return value


def write_trials_csv(path, records) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRIALS_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.trial_no,
                r.participant_id,
                r.target,
                r.transcript,
                "true" if r.correct else "false",
                _num(r.response_time_s),
                _num(r.started_at_s),
                _num(r.ended_at_s),
                r.edit_distance,
            ]
        )
    _atomic_write(path, buf.getvalue())


def read_trials_csv(path) -> list[TrialRecord]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise MalformedCsv("missing header", 1)
    if rows[0] != TRIALS_COLUMNS:
        raise MalformedCsv(f"bad header: expected {','.join(TRIALS_COLUMNS)}", 1)
    records = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(TRIALS_COLUMNS):
            raise MalformedCsv(f"expected {len(TRIALS_COLUMNS)} columns, got {len(row)}", line_no)
        correct_raw = row[4]
        if correct_raw not in ("true", "false"):
            raise MalformedCsv(f"column 'correct': must be true/false, got {correct_raw!r}", line_no)
        rt = _parse_float(row[5], "response_time_s", line_no)
        started = _parse_float(row[6], "started_at_s", line_no)
        ended = _parse_float(row[7], "ended_at_s", line_no)
        if abs(rt - (ended - started)) > 2e-3:
            raise MalformedCsv("response_time_s inconsistent with started/ended", line_no)
        records.append(
            TrialRecord(
                trial_no=_parse_int(row[0], "trial_no", line_no),
                participant_id=row[1],
                target=row[2],
                transcript=row[3],
                correct=correct_raw == "true",
                response_time_s=rt,
                started_at_s=started,
                ended_at_s=ended,
                edit_distance=_parse_int(row[8], "edit_distance", line_no),
            )
        )
    return records


def append_trials_csv(path, records) -> None:
    """Whole-file rewrite keeping existing rows (atomic, replay-safe)."""
    existing = read_trials_csv(path) if Path(path).exists() else []
    write_trials_csv(path, existing + list(records))


def write_blinks_csv(path, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BLINKS_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.trial_no,
                r.participant_id,
                _num(r.start_s),
                _num(r.end_s),
                _num(r.duration_s),
                r.classification,
            ]
        )
    _atomic_write(path, buf.getvalue())


def read_blinks_csv(path) -> list[BlinkLogRow]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    if not rows or rows[0] != BLINKS_COLUMNS:
        raise MalformedCsv(f"bad header: expected {','.join(BLINKS_COLUMNS)}", 1)
    out = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(BLINKS_COLUMNS):
            raise MalformedCsv(f"expected {len(BLINKS_COLUMNS)} columns, got {len(row)}", line_no)
        if row[5] not in CLASSIFICATIONS:
            raise MalformedCsv(f"column 'classification': got {row[5]!r}", line_no)
        out.append(
            BlinkLogRow(
                trial_no=_parse_int(row[0], "trial_no", line_no),
                participant_id=row[1],
                start_s=_parse_float(row[2], "start_s", line_no),
                end_s=_parse_float(row[3], "end_s", line_no),
                duration_s=_parse_float(row[4], "duration_s", line_no),
                classification=row[5],
            )
        )
    return out


def append_blinks_csv(path, rows) -> None:
    existing = read_blinks_csv(path) if Path(path).exists() else []
    write_blinks_csv(path, existing + list(rows))


@dataclass(frozen=True)
class ParticipantSummary:
    participant_id: str
    mean_response_time_s: float
    n_correct: int
    n_incorrect: int

    @property
    def accuracy_pct(self) -> float:
        return 100.0 * self.n_correct / (self.n_correct + self.n_incorrect)


@dataclass(frozen=True)
class StudySummary:
    participants: list[ParticipantSummary]
    trial_numbers: list[int]
    # response_times[pid][trial_no] -> seconds
    response_times: dict[str, dict[int, float]]

    @property
    def overall_accuracy_pct(self) -> float:
        correct = sum(p.n_correct for p in self.participants)
        total = sum(p.n_correct + p.n_incorrect for p in self.participants)
        return 100.0 * correct / total


def summarize(records) -> StudySummary:
    """Per-participant means/accuracies plus the trial-by-trial matrix."""
    records = list(records)
    if not records:
        raise EmptyStudy("no trial records")
    by_pid: dict[str, list[TrialRecord]] = {}
    for r in records:
        by_pid.setdefault(r.participant_id, []).append(r)
    participants = []
    response_times: dict[str, dict[int, float]] = {}
    for pid in sorted(by_pid):
        rows = by_pid[pid]
        participants.append(
            ParticipantSummary(
                participant_id=pid,
                mean_response_time_s=sum(r.response_time_s for r in rows) / len(rows),
                n_correct=sum(r.correct for r in rows),
                n_incorrect=sum(not r.correct for r in rows),
            )
        )
        response_times[pid] = {r.trial_no: r.response_time_s for r in rows}
    trial_numbers = sorted({r.trial_no for r in records})
    return StudySummary(participants, trial_numbers, response_times)
