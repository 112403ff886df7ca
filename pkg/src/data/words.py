"""
Data words: finite sequences and ultimately periodic lassos of
(symbol, value) pairs. Values are plain naturals compared only for equality.
"""

from dataclasses import dataclass
from typing import Tuple

from src.automata.alphabet import Alphabet
from src.core.errors import AlphabetError, SchemaError
from src.utils.subsets import nonempty_subsets

Entry = Tuple[int, int]


def _check_entries(alphabet, entries):
    entries = tuple((int(symbol), int(value)) for symbol, value in entries)
    for symbol, value in entries:
        if not 0 <= symbol < len(alphabet):
            raise AlphabetError(f"symbol {symbol} outside alphabet of size {len(alphabet)}")
        if value < 0:
            raise ValueError(f"data values are naturals, got {value}")
    return entries


@dataclass(frozen=True)
class FiniteDataWord:
    alphabet: Alphabet
    entries: Tuple[Entry, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _check_entries(self.alphabet, self.entries))

    def __len__(self):
        return len(self.entries)

    @property
    def labels(self):
        return tuple(symbol for symbol, _ in self.entries)

    @property
    def values(self):
        return tuple(value for _, value in self.entries)

    def all_entries(self):
        return self.entries

    @classmethod
    def of(cls, alphabet, pairs):
        """Build from (name, value) pairs."""
        return cls(alphabet, tuple((alphabet.symbol(name), value) for name, value in pairs))


@dataclass(frozen=True)
class LassoDataWord:
    """The data omega-word prefix . cycle . cycle . ..."""

    alphabet: Alphabet
    prefix: Tuple[Entry, ...]
    cycle: Tuple[Entry, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", _check_entries(self.alphabet, self.prefix))
        object.__setattr__(self, "cycle", _check_entries(self.alphabet, self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    def all_entries(self):
        """Prefix followed by one copy of the cycle: every position up to periodicity."""
        return self.prefix + self.cycle

    def unroll(self, copies):
        return FiniteDataWord(self.alphabet, self.prefix + self.cycle * copies)

    def entry(self, i):
        """0-based position in the infinite word."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def canonical(self, i):
        """Representative of position i among prefix + one cycle copy."""
        if i < len(self.prefix):
            return i
        return len(self.prefix) + (i - len(self.prefix)) % len(self.cycle)

    @property
    def labels(self):
        return tuple(symbol for symbol, _ in self.all_entries())

    @classmethod
    def of(cls, alphabet, prefix, cycle):
        return cls(
            alphabet,
            tuple((alphabet.symbol(name), value) for name, value in prefix),
            tuple((alphabet.symbol(name), value) for name, value in cycle),
        )


def values_of(word, symbol):
    """V_w(a); for lassos the (finite) set over prefix and cycle."""
    return frozenset(value for a, value in word.all_entries() if a == symbol)


def class_sets(word):
    """[S]_w for every nonempty S: values carried by exactly the labels in S."""
    labels_by_value = {}
    for a, value in word.all_entries():
        labels_by_value.setdefault(value, set()).add(a)
    result = {subset: set() for subset in nonempty_subsets(range(len(word.alphabet)))}
    for value, labels in labels_by_value.items():
        result[frozenset(labels)].add(value)
    return {subset: frozenset(values) for subset, values in result.items()}


def project(word):
    """Proj(w) as a tuple of symbols (prefix + one cycle copy for lassos)."""
    return tuple(symbol for symbol, _ in word.all_entries())


def word_to_json(word):
    render = lambda entries: [[word.alphabet.name(a), value] for a, value in entries]
    if isinstance(word, LassoDataWord):
        return {"prefix": render(word.prefix), "cycle": render(word.cycle)}
    return render(word.entries)


def word_from_json(alphabet, document, pointer="/word"):
    def entries(items, where):
        if not isinstance(items, list):
            raise SchemaError("expected an array of [label, value] pairs", where)
        result = []
        for i, item in enumerate(items):
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], int)):
                raise SchemaError("expected [label, value]", f"{where}/{i}")
            if item[0] not in alphabet:
                raise SchemaError(f"unknown label {item[0]!r}", f"{where}/{i}/0")
            result.append((alphabet.symbol(item[0]), item[1]))
        return tuple(result)

    if isinstance(document, dict):
        cycle = entries(document.get("cycle"), f"{pointer}/cycle")
        if not cycle:
            raise SchemaError("lasso cycle must be nonempty", f"{pointer}/cycle")
        return LassoDataWord(alphabet, entries(document.get("prefix", []), f"{pointer}/prefix"), cycle)
    return FiniteDataWord(alphabet, entries(document, pointer))
