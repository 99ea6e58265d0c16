"""Charts and companion tables for a study summary.

Four figure/table pairs mirror the standard analysis views: mean
response time per participant (bar), response time by trial (line),
correct vs incorrect counts (stacked bar), and accuracy percentage
(bar). Charts render headless to SVG with text as paths (no font
dependencies); every plotted number is written verbatim to the
companion CSV, which is the file golden tests should diff.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import EmptyStudy, IoFailure  # noqa: E402
from .trials import StudySummary, _atomic_write, _num  # noqa: E402

plt.rcParams["svg.fonttype"] = "path"
plt.rcParams["svg.hashsalt"] = "blinkmorse"

REPORT_NAMES = (
    "avg_response_time",
    "response_by_trial",
    "correct_incorrect",
    "accuracy_pct",
)


def _save(fig, out_dir: Path, name: str):
    try:
        fig.savefig(out_dir / f"{name}.svg", format="svg")
    except OSError as exc:
        raise IoFailure(f"cannot write {name}.svg: {exc}") from exc
    finally:
        plt.close(fig)


def emit_report(summary: StudySummary, out_dir) -> list[Path]:
    """Write the four SVG+CSV pairs into ``out_dir``; returns the paths."""
    if not summary.participants:
        raise EmptyStudy("summary has no participants")
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {out_dir}: {exc}") from exc

    pids = [p.participant_id for p in summary.participants]
    written: list[Path] = []

    # 1. Mean response time per participant.
    means = [round(p.mean_response_time_s, 3) for p in summary.participants]
    lines = ["participant_id,mean_response_time_s"]
    lines += [f"{pid},{_num(m)}" for pid, m in zip(pids, means)]
    _atomic_write(out_dir / "avg_response_time.csv", "\n".join(lines) + "\n")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(pids, means, color="#4878cf")
    ax.set_xlabel("Participant")
    ax.set_ylabel("Mean response time (s)")
    ax.set_title("Average response time per participant")
    _save(fig, out_dir, "avg_response_time")

    # 2. Response time by trial number, one series per participant.
    trials = summary.trial_numbers
    rows = ["trial_no," + ",".join(pids)]
    series = {pid: [] for pid in pids}
    for trial_no in trials:
        cells = [str(trial_no)]
        for pid in pids:
            rt = summary.response_times.get(pid, {}).get(trial_no)
            rt = None if rt is None else round(rt, 3)
            series[pid].append(rt)
            cells.append("" if rt is None else _num(rt))
        rows.append(",".join(cells))
    _atomic_write(out_dir / "response_by_trial.csv", "\n".join(rows) + "\n")
    fig, ax = plt.subplots(figsize=(7, 4))
    for pid in pids:
        ax.plot(trials, series[pid], marker="o", label=pid)
    ax.set_xlabel("Trial number")
    ax.set_ylabel("Response time (s)")
    ax.set_title("Response time by trial")
    ax.legend(title="Participant")
    _save(fig, out_dir, "response_by_trial")

    # 3. Correct vs incorrect counts, stacked.
    n_correct = [p.n_correct for p in summary.participants]
    n_incorrect = [p.n_incorrect for p in summary.participants]
    lines = ["participant_id,n_correct,n_incorrect"]
    lines += [f"{pid},{c},{i}" for pid, c, i in zip(pids, n_correct, n_incorrect)]
    _atomic_write(out_dir / "correct_incorrect.csv", "\n".join(lines) + "\n")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(pids, n_correct, label="correct", color="#6acc65")
    ax.bar(pids, n_incorrect, bottom=n_correct, label="incorrect", color="#d65f5f")
    ax.set_xlabel("Participant")
    ax.set_ylabel("Trials")
    ax.set_title("Correct vs incorrect responses per participant")
    ax.legend()
    _save(fig, out_dir, "correct_incorrect")

    # 4. Accuracy percentage.
    acc = [round(p.accuracy_pct, 3) for p in summary.participants]
    lines = ["participant_id,accuracy_pct"]
    lines += [f"{pid},{_num(a)}" for pid, a in zip(pids, acc)]
    _atomic_write(out_dir / "accuracy_pct.csv", "\n".join(lines) + "\n")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(pids, acc, color="#4878cf")
    ax.set_xlabel("Participant")
    ax.set_ylabel("Accuracy (%)")
    ax.set_ylim(0, 100)
    ax.set_title("Accuracy percentage per participant")
    _save(fig, out_dir, "accuracy_pct")

    for name in REPORT_NAMES:
        written += [out_dir / f"{name}.svg", out_dir / f"{name}.csv"]
    return written
