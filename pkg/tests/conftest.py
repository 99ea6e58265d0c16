import random
import string

import pytest

ALPHABET = string.ascii_uppercase + string.digits


def random_message(rng: random.Random, max_len: int = 8) -> str:
    """Random normalized message over the supported alphabet, possibly
    with single internal spaces, total length <= max_len."""
    n = rng.randint(1, max_len)
    chars = []
    for i in range(n):
        if chars and chars[-1] != " " and i < n - 1 and rng.random() < 0.15:
            chars.append(" ")
        else:
            chars.append(rng.choice(ALPHABET))
    msg = "".join(chars).strip()
    return msg or rng.choice(ALPHABET)


@pytest.fixture
def rng():
    return random.Random(1187)
