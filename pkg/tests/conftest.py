from __future__ import annotations

import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from garside import BraidWord  # noqa: E402


def random_word(rng: random.Random, n: int, length: int, positive: bool = False) -> BraidWord:
    letters = []
    for _ in range(length):
        g = rng.randint(1, n - 1)
        letters.append(g if positive or rng.random() < 0.5 else -g)
    return BraidWord(n, tuple(letters))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
