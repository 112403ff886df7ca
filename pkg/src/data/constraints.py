"""Key, inclusion and denial constraints on the data values of a word."""

from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from src.core.errors import ConstraintError, SchemaError
from src.data.words import LassoDataWord
from src.utils.subsets import nonempty_subsets, set_name


@dataclass(frozen=True)
class Key:
    """No two a-positions share a value."""

    symbol: int

    def symbols(self):
        return {self.symbol}


@dataclass(frozen=True)
class Inclusion:
    """Every value at an a-position also occurs at some position labelled in ``targets``."""

    symbol: int
    targets: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "targets", frozenset(self.targets))

    def symbols(self):
        return {self.symbol} | set(self.targets)


@dataclass(frozen=True)
class Denial:
    """a-positions and b-positions never share a value."""

    first: int
    second: int

    def __post_init__(self):
        if self.first > self.second:
            first, second = self.second, self.first
            object.__setattr__(self, "first", first)
            object.__setattr__(self, "second", second)

    def symbols(self):
        return {self.first, self.second}


class ConstraintSet:
    """Constraints over one alphabet; duplicates are dropped on ingest, order is kept."""

    def __init__(self, alphabet, constraints=()):
        self.alphabet = alphabet
        seen = []
        for constraint in constraints:
            for symbol in constraint.symbols():
                if not 0 <= symbol < len(alphabet):
                    raise ConstraintError(f"{constraint} mentions a symbol outside the alphabet")
            if constraint not in seen:
                seen.append(constraint)
        self.constraints = tuple(seen)

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self):
        return len(self.constraints)

    def __eq__(self, other):
        return isinstance(other, ConstraintSet) and self.alphabet == other.alphabet and set(self.constraints) == set(other.constraints)

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.constraints)))

    def __repr__(self):
        return f"ConstraintSet({[describe(c, self.alphabet) for c in self.constraints]})"

    @property
    def keys(self):
        return tuple(c for c in self.constraints if isinstance(c, Key))

    @property
    def inclusions(self):
        return tuple(c for c in self.constraints if isinstance(c, Inclusion))

    @property
    def denials(self):
        return tuple(c for c in self.constraints if isinstance(c, Denial))

    @property
    def key_symbols(self):
        return frozenset(c.symbol for c in self.keys)

    def has_keys(self):
        return bool(self.keys)

    def with_constraint(self, constraint):
        return ConstraintSet(self.alphabet, self.constraints + (constraint,))


@dataclass(frozen=True)
class ConstraintResult:
    constraint: object
    holds: bool
    positions: Optional[Tuple[int, ...]] = None


def _first_shared_pair(entries, left, right):
    """First (i, j), i < j, 1-based, with one position in ``left``, the other in ``right`` and equal values."""
    for i, (a, value_i) in enumerate(entries):
        for j in range(i + 1, len(entries)):
            b, value_j = entries[j]
            if value_i != value_j:
                continue
            if (a in left and b in right) or (a in right and b in left):
                return (i + 1, j + 1)
    return None


def _check_one(constraint, entries, key_entries):
    if isinstance(constraint, Key):
        pair = _first_shared_pair(key_entries, {constraint.symbol}, {constraint.symbol})
        return ConstraintResult(constraint, pair is None, pair)
    if isinstance(constraint, Inclusion):
        covered = {value for a, value in entries if a in constraint.targets}
        for i, (a, value) in enumerate(entries):
            if a == constraint.symbol and value not in covered:
                return ConstraintResult(constraint, False, (i + 1,))
        return ConstraintResult(constraint, True)
    if constraint.first == constraint.second:
        for i, (a, _) in enumerate(entries):
            if a == constraint.first:
                return ConstraintResult(constraint, False, (i + 1, i + 1))
        return ConstraintResult(constraint, True)
    pair = _first_shared_pair(entries, {constraint.first}, {constraint.second})
    return ConstraintResult(constraint, pair is None, pair)


def check_constraints(word, constraints):
    """Per-constraint verdicts with the first violating positions (1-based, lexicographic).

    For lassos, keys are checked on the prefix followed by two cycle copies
    (any key symbol inside the cycle then collides with its own copy);
    inclusions and denials depend only on value sets, so prefix plus one
    cycle copy suffices.
    """
    entries = word.all_entries()
    if isinstance(word, LassoDataWord):
        key_entries = word.prefix + word.cycle + word.cycle
    else:
        key_entries = entries
    return tuple(_check_one(constraint, entries, key_entries) for constraint in constraints)


def satisfies(word, constraints):
    return all(result.holds for result in check_constraints(word, constraints))


def forced_empty(subset, constraint):
    """Whether ``constraint`` forces the class of ``subset`` to be empty."""
    if isinstance(constraint, Inclusion):
        return constraint.symbol in subset and not (subset & constraint.targets)
    if isinstance(constraint, Denial):
        return constraint.first in subset and constraint.second in subset
    return False


def s_zero_of(constraints, symbols=None):
    """Nonempty subsets S whose class [S] every satisfying word leaves empty."""
    if symbols is None:
        symbols = range(len(constraints.alphabet))
    return frozenset(
        subset
        for subset in nonempty_subsets(symbols)
        if any(forced_empty(subset, constraint) for constraint in constraints)
    )


def describe(constraint, alphabet):
    name = alphabet.name
    if isinstance(constraint, Key):
        return f"V({name(constraint.symbol)}) -> {name(constraint.symbol)}"
    if isinstance(constraint, Inclusion):
        targets = set_name(sorted(name(b) for b in constraint.targets))
        return f"V({name(constraint.symbol)}) <= U{targets}"
    return f"V({name(constraint.first)}) & V({name(constraint.second)}) = {{}}"


def constraint_to_json(constraint, alphabet):
    name = alphabet.name
    if isinstance(constraint, Key):
        return {"kind": "key", "symbol": name(constraint.symbol)}
    if isinstance(constraint, Inclusion):
        return {"kind": "inclusion", "symbol": name(constraint.symbol), "targets": sorted(name(b) for b in constraint.targets)}
    return {"kind": "denial", "symbols": [name(constraint.first), name(constraint.second)]}


def constraint_from_json(alphabet, document, pointer):
    if not isinstance(document, dict):
        raise SchemaError("constraint must be an object", pointer)

    def symbol(value, where):
        if not isinstance(value, str) or value not in alphabet:
            raise SchemaError(f"unknown symbol {value!r}", where)
        return alphabet.symbol(value)

    kind = document.get("kind")
    if kind == "key":
        return Key(symbol(document.get("symbol"), f"{pointer}/symbol"))
    if kind == "inclusion":
        targets = document.get("targets")
        if not isinstance(targets, list):
            raise SchemaError("inclusion needs a targets array", f"{pointer}/targets")
        return Inclusion(
            symbol(document.get("symbol"), f"{pointer}/symbol"),
            frozenset(symbol(t, f"{pointer}/targets/{i}") for i, t in enumerate(targets)),
        )
    if kind == "denial":
        pair = document.get("symbols")
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError("denial needs two symbols", f"{pointer}/symbols")
        return Denial(symbol(pair[0], f"{pointer}/symbols/0"), symbol(pair[1], f"{pointer}/symbols/1"))
    raise SchemaError(f"unknown constraint kind {kind!r}", f"{pointer}/kind")


def constraints_from_json(alphabet, documents, pointer="/constraints"):
    if documents is None:
        return ConstraintSet(alphabet)
    if not isinstance(documents, list):
        raise SchemaError("constraints must be an array", pointer)
    return ConstraintSet(alphabet, [constraint_from_json(alphabet, d, f"{pointer}/{i}") for i, d in enumerate(documents)])
