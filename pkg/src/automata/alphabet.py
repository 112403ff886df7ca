"""Interned finite alphabets. Symbols are dense integer indices."""

from src.core.errors import AlphabetError


class Alphabet:
    """Ordered list of distinct symbol names; the order fixes Parikh vector indexing."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        index = {}
        for i, name in enumerate(names):
            if not isinstance(name, str):
                raise AlphabetError(f"symbol names must be strings, got {name!r}")
            if name in index:
                raise AlphabetError(f"duplicate symbol {name!r}")
            index[name] = i
        self.names = names
        self._index = index

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({list(self.names)!r})"

    def symbol(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise AlphabetError(f"unknown symbol {name!r}") from None

    def symbols(self, names):
        return frozenset(self.symbol(name) for name in names)

    def name(self, symbol):
        if not 0 <= symbol < len(self.names):
            raise AlphabetError(f"symbol id {symbol} outside alphabet of size {len(self.names)}")
        return self.names[symbol]

    def word(self, names):
        """Intern a word given as a list of names (or a whitespace separated string)."""
        if isinstance(names, str):
            names = names.split()
        return tuple(self.symbol(name) for name in names)

    def render(self, word):
        return " ".join(self.names[symbol] for symbol in word)

    def extend(self, extra_names):
        return Alphabet(self.names + tuple(extra_names))


def require_same(first, second, what="alphabets"):
    if first != second:
        raise AlphabetError(f"{what} differ: {list(first.names)} vs {list(second.names)}")
