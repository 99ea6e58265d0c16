import pytest
from hypothesis import given
from hypothesis import strategies as st

from blinkmorse.errors import UnsupportedCharacter
from blinkmorse.morse import (
    ALPHABET,
    CODE_FOR_CHAR,
    DASH,
    DOT,
    TimingConfig,
    classification_label,
    classify_blink,
    decode_sequence,
    encode_char,
    encode_message,
)


def test_known_codes():
    assert encode_char("S") == "..."
    assert encode_char("O") == "---"
    assert encode_char("E") == "."
    assert encode_char("s") == "..."  # case-insensitive


def test_alphabet_is_letters_and_digits():
    assert len(ALPHABET) == 36
    assert all(1 <= len(code) <= 5 for code in CODE_FOR_CHAR.values())


def test_round_trip_exhaustive():
    for char, code in CODE_FOR_CHAR.items():
        assert decode_sequence(code) == char


def test_dictionary_injective():
    codes = list(CODE_FOR_CHAR.values())
    assert len(set(codes)) == len(codes)


def test_decode_unknown_sequences():
    # exhaustive scan: no 6-symbol sequence maps to anything
    assert decode_sequence("......") is None
    assert all(len(code) <= 5 for code in CODE_FOR_CHAR.values())
    assert decode_sequence("") is None


def test_encode_char_unsupported():
    for bad in ("!", " ", "é", "?", ".", ""):
        with pytest.raises(UnsupportedCharacter):
            encode_char(bad)


def test_encode_message_words():
    assert encode_message("SOS") == [[("S", "..."), ("O", "---"), ("S", "...")]]
    assert encode_message("HELP") == [
        [("H", "...."), ("E", "."), ("L", ".-.."), ("P", ".--.")]
    ]
    assert encode_message("") == []
    assert encode_message("GO ON") == [
        [("G", "--."), ("O", "---")],
        [("O", "---"), ("N", "-.")],
    ]


def test_encode_message_unsupported():
    with pytest.raises(UnsupportedCharacter):
        encode_message("SOS!")


def test_classification_paper_boundaries():
    cfg = TimingConfig()
    assert classify_blink(1.5, cfg) == DOT
    assert classify_blink(2.0, cfg) == DASH  # boundary inclusive
    assert classify_blink(0.8, cfg) is None
    assert classify_blink(0.999, cfg) is None
    assert classify_blink(1.0, cfg) == DOT
    assert classify_blink(1.999, cfg) == DOT


@given(st.floats(min_value=1e-6, max_value=1e4, allow_nan=False))
def test_classification_total(duration):
    cfg = TimingConfig()
    result = classify_blink(duration, cfg)
    if duration >= cfg.dash_min_s:
        assert result == DASH
    elif duration >= cfg.dot_min_s:
        assert result == DOT
    else:
        assert result is None


def test_classification_labels():
    assert classification_label(DOT) == "dot"
    assert classification_label(DASH) == "dash"
    assert classification_label(None) == "ignored"


def test_timing_config_validation():
    with pytest.raises(ValueError):
        TimingConfig(dot_min_s=2.0, dash_min_s=2.0)
    with pytest.raises(ValueError):
        TimingConfig(letter_gap_s=3.0, word_gap_s=3.0)
    with pytest.raises(ValueError):
        TimingConfig(dot_min_s=0.0)
