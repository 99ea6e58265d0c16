"""Streaming Morse decoder driven by blink events and the passage of time.

A pause strictly longer than ``letter_gap_s`` after the last non-ignored
blink commits the pending symbols as one character; strictly longer than
``word_gap_s`` additionally emits a word break. The same gap logic runs
when a new blink arrives and on timer ticks, guarded to fire at most
once per gap, so event-only replay (no ticks) and live operation with
frequent ticks produce identical transcripts.

Feed blinks and ticks in timestamp order; a blink occupies the stream at
its start time, so never deliver a tick whose time falls inside a blink
that has not been delivered yet (the engine ticks only while the eye is
open).
"""

from __future__ import annotations

from dataclasses import dataclass

from .detect import BlinkEvent
from .errors import NonMonotonicTimestamp
from .morse import PLACEHOLDER, TimingConfig, classify_blink, decode_sequence


@dataclass(frozen=True)
class SymbolAppended:
    symbol: str  # "." or "-"
    at_s: float


@dataclass(frozen=True)
class BlinkIgnored:
    duration_s: float
    at_s: float


@dataclass(frozen=True)
class LetterCommitted:
    char: str
    code: str
    at_s: float


@dataclass(frozen=True)
class InvalidSequence:
    code: str
    at_s: float


@dataclass(frozen=True)
class WordBreak:
    at_s: float


DecoderEvent = SymbolAppended | BlinkIgnored | LetterCommitted | InvalidSequence | WordBreak


class LiveDecoder:
    """Single-owner sequential decoder state.

    Ignored (sub-dot) blinks never touch the pending sequence or the gap
    clock, so involuntary blinks cannot break letter cadence. Unknown
    sequences commit as '?' preceded by an InvalidSequence event, keeping
    errors visible in logs instead of silently dropping them.
    """

    def __init__(self, cfg: TimingConfig | None = None):
        self.cfg = cfg or TimingConfig()
        self._pending: list[str] = []
        self._last_blink_end: float | None = None
        self._word_break_pending = False
        self._transcript: list[str] = []

    @property
    def pending_code(self) -> str:
        return "".join(self._pending)

    @property
    def transcript(self) -> str:
        return "".join(self._transcript)

    def _commit(self, at_s: float) -> list[DecoderEvent]:
        code = self.pending_code
        self._pending.clear()
        char = decode_sequence(code)
        events: list[DecoderEvent] = []
        if char is None:
            events.append(InvalidSequence(code, at_s))
            char = PLACEHOLDER
        events.append(LetterCommitted(char, code, at_s))
        if self._word_break_pending and self._transcript:
            self._transcript.append(" ")
        self._word_break_pending = False
        self._transcript.append(char)
        return events

    def _gap_events(self, now_s: float) -> list[DecoderEvent]:
        # Shared by on_blink and on_tick: fires each consequence at most
        # once per gap. Gaps compare strictly (a pause must EXCEED the
        # threshold), per the classification rules.
        events: list[DecoderEvent] = []
        if self._last_blink_end is None:
            return events
        gap = now_s - self._last_blink_end
        if self._pending and gap > self.cfg.letter_gap_s:
            events.extend(self._commit(now_s))
        if gap > self.cfg.word_gap_s and self._transcript and not self._word_break_pending:
            self._word_break_pending = True
            events.append(WordBreak(now_s))
        return events

    def on_blink(self, blink: BlinkEvent) -> list[DecoderEvent]:
        """Apply the gap preceding this blink, then classify and append it."""
        if self._last_blink_end is not None and blink.start_s < self._last_blink_end:
            raise NonMonotonicTimestamp(
                f"blink start {blink.start_s} before previous end {self._last_blink_end}"
            )
        events = self._gap_events(blink.start_s)
        symbol = classify_blink(blink.duration_s, self.cfg)
        if symbol is None:
            events.append(BlinkIgnored(blink.duration_s, blink.end_s))
            return events
        self._pending.append(symbol)
        events.append(SymbolAppended(symbol, blink.end_s))
        self._last_blink_end = blink.end_s
        return events

    def on_tick(self, now_s: float) -> list[DecoderEvent]:
        """Advance the gap clock to ``now_s``. Idempotent: repeated ticks at
        the same or later times never double-commit or double-space."""
        return self._gap_events(now_s)

    def flush(self) -> list[DecoderEvent]:
        """End of session: commit any pending sequence at the time of the
        last blink. Never emits a trailing word break."""
        if not self._pending:
            return []
        at = self._last_blink_end if self._last_blink_end is not None else 0.0
        return self._commit(at)
