"""Fixtures shared across the test suite."""
from __future__ import annotations

import random

import pytest

from src.automata.alphabet import Alphabet

SEED = 20240611


@pytest.fixture
def a_only():
    return Alphabet(["a"])


@pytest.fixture
def ab():
    return Alphabet(["a", "b"])


@pytest.fixture
def abc():
    return Alphabet(["a", "b", "c"])


@pytest.fixture
def rng():
    """Fresh seeded generator per test so failures reproduce."""
    return random.Random(SEED)
