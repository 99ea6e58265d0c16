"""International Morse code table and blink-duration classification.

Symbol sequences are plain strings of ``.`` and ``-``. The alphabet is
A-Z and 0-9 only; anything else raises :class:`UnsupportedCharacter`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedCharacter

DOT = "."
DASH = "-"

# ITU-R M.1677-1 codes for letters and digits.
CODE_FOR_CHAR = {
    "A": ".-", "B": "-...", "C": "-.-.", "D": "-..", "E": ".",
    "F": "..-.", "G": "--.", "H": "....", "I": "..", "J": ".---",
    "K": "-.-", "L": ".-..", "M": "--", "N": "-.", "O": "---",
    "P": ".--.", "Q": "--.-", "R": ".-.", "S": "...", "T": "-",
    "U": "..-", "V": "...-", "W": ".--", "X": "-..-", "Y": "-.--",
    "Z": "--..",
    "0": "-----", "1": ".----", "2": "..---", "3": "...--", "4": "....-",
    "5": ".....", "6": "-....", "7": "--...", "8": "---..", "9": "----.",
}

CHAR_FOR_CODE = {code: char for char, code in CODE_FOR_CHAR.items()}

ALPHABET = frozenset(CODE_FOR_CHAR)

# Committed when a pending sequence matches no code.
PLACEHOLDER = "?"


@dataclass(frozen=True)
class TimingConfig:
    """Duration thresholds for classifying blinks and pauses, in seconds.

    A blink of at least ``dot_min_s`` but under ``dash_min_s`` is a dot;
    ``dash_min_s`` or longer is a dash; shorter than ``dot_min_s`` is
    ignored as involuntary. A pause strictly longer than ``letter_gap_s``
    commits the pending sequence; strictly longer than ``word_gap_s``
    additionally inserts a word break.
    """

    dot_min_s: float = 1.0
    dash_min_s: float = 2.0
    letter_gap_s: float = 1.0
    word_gap_s: float = 3.0

    def __post_init__(self):
        if not 0 < self.dot_min_s < self.dash_min_s:
            raise ValueError("require 0 < dot_min_s < dash_min_s")
        if not 0 < self.letter_gap_s < self.word_gap_s:
            raise ValueError("require 0 < letter_gap_s < word_gap_s")


def classify_blink(duration_s: float, cfg: TimingConfig | None = None) -> str | None:
    """Classify a blink duration as ``DOT``, ``DASH``, or None (ignored).

    Boundaries are inclusive on the low side: exactly ``dot_min_s`` is a
    dot, exactly ``dash_min_s`` is a dash.
    """
    cfg = cfg or TimingConfig()
    if duration_s >= cfg.dash_min_s:
        return DASH
    if duration_s >= cfg.dot_min_s:
        return DOT
    return None


def classification_label(symbol: str | None) -> str:
    """Log/CSV label for a classify_blink result."""
    if symbol == DOT:
        return "dot"
    if symbol == DASH:
        return "dash"
    return "ignored"


def encode_char(c: str) -> str:
    """Return the code for a single character (case-insensitive)."""
    code = CODE_FOR_CHAR.get(c.upper())
    if code is None:
        raise UnsupportedCharacter(c)
    return code


def decode_sequence(seq: str) -> str | None:
    """Return the character for a symbol sequence, or None if unknown."""
    return CHAR_FOR_CODE.get(seq)


def encode_message(text: str) -> list[list[tuple[str, str]]]:
    """Encode a message as words of (character, code) pairs.

    Runs of whitespace separate words; the word boundaries are implicit
    between the returned sublists. Characters are uppercased.
    """
    words = []
    for word in text.split():
        words.append([(c.upper(), encode_char(c)) for c in word])
    return words
