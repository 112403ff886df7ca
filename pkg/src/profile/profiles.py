"""
Profile words: each position records whether its value equals the value of
its left and right neighbour.

A profile letter ``a:LR`` pairs a base letter with two flags from
``*`` (no neighbour), ``=`` (same value) and ``!`` (different value).
"""

from dataclasses import dataclass
from typing import NamedTuple, Tuple

from src.automata.alphabet import Alphabet, require_same
from src.automata.systems import BuchiAutomaton, TransitionSystem
from src.core.constants import FLAG_DIFF, FLAG_SAME, FLAG_STAR, FLAGS
from src.core.errors import AlphabetError, SchemaError
from src.data.constraints import ConstraintSet
from src.data.words import LassoDataWord


@dataclass(frozen=True)
class ProfileLetter:
    symbol: int
    left: str
    right: str

    def __post_init__(self):
        if self.left not in FLAGS or self.right not in FLAGS:
            raise AlphabetError(f"unknown profile flag in {self.left!r}/{self.right!r}")


class ProfileLasso(NamedTuple):
    prefix: Tuple[ProfileLetter, ...]
    cycle: Tuple[ProfileLetter, ...]


class ProfileAlphabet:
    """Sigma x {*, =, !}^2, ordered by letter, then left flag, then right flag."""

    def __init__(self, base):
        self.base = base
        self.letters = tuple(ProfileLetter(a, left, right) for a in base for left in FLAGS for right in FLAGS)
        self._index = {letter: i for i, letter in enumerate(self.letters)}
        self.alphabet = Alphabet([self.letter_name(letter) for letter in self.letters])

    def letter_name(self, letter):
        return f"{self.base.name(letter.symbol)}:{letter.left}{letter.right}"

    def index(self, symbol, left, right):
        return self._index[ProfileLetter(symbol, left, right)]

    def letter(self, i):
        return self.letters[i]

    def encode(self, letters):
        return tuple(self._index[letter] for letter in letters)


def profile_alphabet(base):
    return ProfileAlphabet(base)


def _flag(value, other):
    if other is None:
        return FLAG_STAR
    return FLAG_SAME if value == other else FLAG_DIFF


def profile_of(word):
    """Profile of a finite word (tuple of letters) or of a lasso (ProfileLasso).

    For a lasso the prefix covers the original prefix plus the first cycle copy,
    whose flags may differ from later copies at the seam; the cycle is the
    steady state of every later copy.
    """
    if isinstance(word, LassoDataWord):
        entries = word.prefix + word.cycle + word.cycle + word.cycle[:1]
        steady = len(word.prefix) + len(word.cycle)
        letters = []
        for i in range(steady + len(word.cycle)):
            symbol, value = entries[i]
            left = entries[i - 1][1] if i > 0 else None
            letters.append(ProfileLetter(symbol, _flag(value, left), _flag(value, entries[i + 1][1])))
        return ProfileLasso(tuple(letters[:steady]), tuple(letters[steady:]))
    entries = word.entries
    letters = []
    for i, (symbol, value) in enumerate(entries):
        left = entries[i - 1][1] if i > 0 else None
        right = entries[i + 1][1] if i + 1 < len(entries) else None
        letters.append(ProfileLetter(symbol, _flag(value, left), _flag(value, right)))
    return tuple(letters)


@dataclass(frozen=True)
class ProfileAdc:
    """Büchi automaton over profile letters plus constraints over the base alphabet."""

    automaton: BuchiAutomaton
    constraints: ConstraintSet

    def __post_init__(self):
        expected = ProfileAlphabet(self.constraints.alphabet).alphabet
        require_same(self.automaton.alphabet, expected, "profile automaton alphabet")

    @property
    def base(self):
        return self.constraints.alphabet

    @property
    def profiles(self):
        return ProfileAlphabet(self.base)


def profile_automaton(base, accepts_letter):
    """Two-state automaton: the first letter must satisfy ``accepts_letter(letter, True)``,
    every later one ``accepts_letter(letter, False)``; right flags are never ``*``."""
    profiles = ProfileAlphabet(base)
    transitions = set()
    for i, letter in enumerate(profiles.letters):
        if letter.right == FLAG_STAR:
            continue
        if letter.left == FLAG_STAR and accepts_letter(letter, True):
            transitions.add((0, i, 1))
        if letter.left != FLAG_STAR and accepts_letter(letter, False):
            transitions.add((1, i, 1))
    ts = TransitionSystem(profiles.alphabet, 2, frozenset(transitions))
    return BuchiAutomaton(ts, 0, frozenset([1]))


def universal_profile_automaton(base):
    return profile_automaton(base, lambda letter, first: True)


def profile_accepts_prefix(automaton, word):
    """Whether some run of the profile automaton survives the profile of ``word``.

    ``word`` is a finite prefix of an omega-word, so the right flag of its last
    position is unknown and both ``=`` and ``!`` are tried.
    """
    profiles = ProfileAlphabet(word.alphabet)
    letters = profile_of(word)
    require_same(automaton.alphabet, profiles.alphabet, "profile automaton alphabet")
    states = frozenset([automaton.initial])
    for letter in letters[:-1]:
        states = automaton.ts.step(states, profiles.index(letter.symbol, letter.left, letter.right))
        if not states:
            return False
    if not letters:
        return True
    last = letters[-1]
    return any(
        automaton.ts.step(states, profiles.index(last.symbol, last.left, right))
        for right in (FLAG_SAME, FLAG_DIFF)
    )


def profile_letter_to_json(letter, base):
    return [base.name(letter.symbol), letter.left, letter.right]


def profile_letter_from_json(base, document, pointer):
    if not (isinstance(document, list) and len(document) == 3):
        raise SchemaError("profile letter must be [label, left, right]", pointer)
    label, left, right = document
    if label not in base:
        raise SchemaError(f"unknown label {label!r}", f"{pointer}/0")
    for index, flag in ((1, left), (2, right)):
        if flag not in FLAGS:
            raise SchemaError(f"unknown flag {flag!r}", f"{pointer}/{index}")
    return ProfileLetter(base.symbol(label), left, right)
