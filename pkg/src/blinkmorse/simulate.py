"""Deterministic simulator: target message -> blink schedule -> EAR trace.

The inverse of the decoding pipeline, used as the round-trip oracle in
tests and to produce demo/replay files. Default timings sit safely
inside the decoder's classification bands (dot 1.2 s in [1, 2), dash
2.2 s >= 2, letter pause 1.4 s > 1, word pause 3.5 s > 3) so sampling
jitter at any fps >= 10 cannot flip a decision; with these defaults
"SOS" spans exactly 19.0 s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .detect import BlinkEvent
from .ear import FrameSample
from .morse import DASH, TimingConfig, encode_message


@dataclass(frozen=True)
class SimProfile:
    dot_s: float = 1.2
    dash_s: float = 2.2
    intra_gap_s: float = 0.4
    letter_gap_s: float = 1.4
    word_gap_s: float = 3.5
    open_ear: float = 0.32
    closed_ear: float = 0.08
    fps: float = 30.0
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.dot_s < self.dash_s:
            raise ValueError("require 0 < dot_s < dash_s")
        if min(self.intra_gap_s, self.letter_gap_s, self.word_gap_s) <= 0:
            raise ValueError("gaps must be positive")
        if not self.closed_ear < self.open_ear:
            raise ValueError("closed_ear must be below open_ear")
        if self.fps < 1:
            raise ValueError("fps must be at least 1")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")

    def compatible_with(self, timing: TimingConfig) -> bool:
        """Whether blinks/pauses from this profile decode correctly under
        ``timing`` (before sampling jitter)."""
        return (
            timing.dot_min_s <= self.dot_s < timing.dash_min_s
            and self.dash_s >= timing.dash_min_s
            and self.intra_gap_s <= timing.letter_gap_s
            and self.letter_gap_s > timing.letter_gap_s
            and self.word_gap_s > timing.word_gap_s
        )


def simulate_blink_events(message: str, profile: SimProfile | None = None) -> list[BlinkEvent]:
    """Timed blink schedule for ``message``.

    One blink per Morse symbol, dot_s or dash_s long; symbols within a
    letter are intra_gap_s apart, letters letter_gap_s, words word_gap_s.
    Raises UnsupportedCharacter for anything outside A-Z / 0-9 / space.
    """
    profile = profile or SimProfile()
    events: list[BlinkEvent] = []
    t = 0.0
    for w, word in enumerate(encode_message(message)):
        if w > 0:
            t += profile.word_gap_s
        for c, (_, code) in enumerate(word):
            if c > 0:
                t += profile.letter_gap_s
            for s, symbol in enumerate(code):
                if s > 0:
                    t += profile.intra_gap_s
                duration = profile.dash_s if symbol == DASH else profile.dot_s
                events.append(BlinkEvent.from_span(t, t + duration))
                t += duration
    return events


def simulate_ear_trace(message: str, profile: SimProfile | None = None) -> list[FrameSample]:
    """EAR frame samples for ``message`` at the profile's frame rate.

    Samples land on the grid t = i/fps; frames inside a blink interval
    [start, end) read closed_ear, all others open_ear, plus seeded
    Gaussian noise of ``noise_sigma`` clamped at zero. Deterministic for
    a fixed profile.
    """
    profile = profile or SimProfile()
    events = simulate_blink_events(message, profile)
    total = events[-1].end_s if events else 0.0
    # ceil with a tolerance so a grid-aligned total does not gain a frame
    # from float round-up.
    n = int(math.ceil(total * profile.fps - 1e-9)) + 1
    ts = np.arange(n, dtype=float) / profile.fps
    ears = np.full(n, profile.open_ear, dtype=float)
    for ev in events:
        i0 = int(math.ceil(ev.start_s * profile.fps - 1e-9))
        i1 = int(math.ceil(ev.end_s * profile.fps - 1e-9))
        ears[i0:i1] = profile.closed_ear
    if profile.noise_sigma > 0:
        rng = np.random.default_rng(profile.seed)
        ears = ears + rng.normal(0.0, profile.noise_sigma, size=n)
        np.clip(ears, 0.0, None, out=ears)
    return [FrameSample(t=float(t), ear=float(e)) for t, e in zip(ts, ears)]
