"""Live operator console state and rendering.

The console is a pure view: every field derives from engine event lines
plus the local frame stream, and it performs no decoding of its own.
Killing and restarting it never changes the engine transcript.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from rich.console import Group
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

SPARK_CHARS = " .:-=+*#%@"
LETTER_GAP_S = 1.0
WORD_GAP_S = 3.0

_SYMBOL_GLYPH = {".": "·", "-": "−"}


@dataclass
class ConsoleState:
    close_threshold: float = 0.21
    open_threshold: float = 0.24
    ear: float | None = None
    ear_history: deque = field(default_factory=lambda: deque(maxlen=60))
    pending: str = ""
    transcript: str = ""
    word_break_pending: bool = False
    last_blink_end: float | None = None
    local_t: float = 0.0
    flash: str = ""
    banner: str = ""
    raw_events: deque = field(default_factory=lambda: deque(maxlen=5))
    eye_closed: bool = False

    def on_frame(self, t: float, ear: float | None):
        self.local_t = max(self.local_t, t)
        self.ear = ear
        if ear is not None:
            self.ear_history.append(ear)
            self.eye_closed = ear < self.close_threshold

    def on_event(self, event: dict):
        kind = event.get("event")
        if kind == "symbol":
            symbol = event.get("symbol", "?")
            self.pending += symbol
            self.flash = "DASH" if symbol == "-" else "DOT"
        elif kind == "ignored":
            self.flash = f"too short ({event.get('duration', 0):.2f}s)"
        elif kind == "letter":
            char = event.get("char", "?")
            if self.word_break_pending and self.transcript:
                self.transcript += " "
            self.word_break_pending = False
            self.transcript += char
            self.pending = ""
            self.flash = f"letter {char}"
        elif kind == "invalid":
            self.flash = f"invalid sequence {event.get('code', '')}"
        elif kind == "word_break":
            self.word_break_pending = True
            self.flash = "word break"
        elif kind == "blink":
            end = event.get("end")
            if isinstance(end, (int, float)):
                self.last_blink_end = float(end)
        else:
            self.raw_events.append(event.get("raw", repr(event)))

    def gap_s(self) -> float | None:
        if self.last_blink_end is None:
            return None
        return max(0.0, self.local_t - self.last_blink_end)


def _sparkline(values, lo=0.0, hi=0.45, width=60) -> str:
    chars = []
    for v in list(values)[-width:]:
        frac = min(1.0, max(0.0, (v - lo) / (hi - lo)))
        chars.append(SPARK_CHARS[int(frac * (len(SPARK_CHARS) - 1))])
    return "".join(chars)


def _bar(elapsed: float, threshold: float, width: int = 24) -> str:
    frac = min(1.0, elapsed / threshold)
    filled = int(frac * width)
    return "[" + "#" * filled + "-" * (width - filled) + f"] {elapsed:4.1f}/{threshold:.0f}s"


def render(state: ConsoleState) -> Panel:
    """Build one console frame from the current state."""
    table = Table.grid(padding=(0, 1))
    table.add_column(justify="right", style="bold")
    table.add_column()

    if state.ear is None:
        ear_line = Text("tracking lost", style="red")
    else:
        style = "red" if state.eye_closed else "green"
        ear_line = Text(
            f"{state.ear:.3f}  (close<{state.close_threshold:.2f} open>{state.open_threshold:.2f})",
            style=style,
        )
    table.add_row("EAR", ear_line)
    table.add_row("", Text(_sparkline(state.ear_history), style="cyan"))

    buffer = " ".join(_SYMBOL_GLYPH.get(s, s) for s in state.pending) or "(empty)"
    table.add_row("buffer", Text(buffer, style="yellow bold"))
    table.add_row("transcript", Text(state.transcript or "(empty)", style="white bold"))

    gap = state.gap_s()
    if gap is None:
        table.add_row("pause", Text("waiting for first blink", style="dim"))
    else:
        table.add_row("pause", Text(f"letter {_bar(gap, LETTER_GAP_S)}", style="magenta"))
        table.add_row("", Text(f"word   {_bar(gap, WORD_GAP_S)}", style="magenta"))

    if state.flash:
        table.add_row("last", Text(state.flash, style="bold reverse"))

    parts = [table]
    if state.raw_events:
        raw = Text("\n".join(state.raw_events), style="dim")
        parts.append(Panel(raw, title="unrecognized events", border_style="dim"))
    if state.banner:
        parts.append(Panel(Text(state.banner, style="bold red"), border_style="red"))
    return Panel(Group(*parts), title="blinkmorse console", border_style="blue")
