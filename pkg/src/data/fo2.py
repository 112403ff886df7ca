"""
Encoding of pre-parsed two-variable normal-form clauses as data constraints.

The extended alphabet pairs each base letter with a bit vector over ``k``
unary predicates (``"a/01"``); with ``k = 0`` the base names are kept.
Clauses of the key kind (``forall x, y. alpha(x) & alpha(y) & x ~ y -> x = y``)
become a key on every letter consistent with ``alpha`` plus pairwise
denials between them; clauses of the inclusion kind
(``forall x. alpha(x) -> exists y. alpha'(y) & x ~ y``) become inclusions.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional, Tuple

from src.automata.alphabet import Alphabet
from src.core.errors import ConstraintError
from src.data.constraints import ConstraintSet, Denial, Inclusion, Key

CLAUSE_KEY = "key"
CLAUSE_INCLUSION = "inclusion"


@dataclass(frozen=True)
class LetterPattern:
    """Optional base letter plus required predicate signs; unlisted predicates are unconstrained."""

    letter: Optional[str] = None
    signs: Tuple[Tuple[int, bool], ...] = field(default=())

    def matches(self, letter, bits):
        if self.letter is not None and self.letter != letter:
            return False
        return all(bits[index] == sign for index, sign in self.signs)


@dataclass(frozen=True)
class Fo2Clause:
    kind: str
    alpha: LetterPattern
    alpha_prime: Optional[LetterPattern] = None


def extended_name(letter, bits):
    if not bits:
        return letter
    return f"{letter}/" + "".join("1" if bit else "0" for bit in bits)


def extended_alphabet(base, k):
    names = [extended_name(letter, bits) for letter in base.names for bits in product((False, True), repeat=k)]
    return Alphabet(names)


def _consistent(base, k, pattern, extended):
    return [
        extended.symbol(extended_name(letter, bits))
        for letter in base.names
        for bits in product((False, True), repeat=k)
        if pattern.matches(letter, bits)
    ]


def _validate(base, k, pattern):
    if pattern.letter is not None and pattern.letter not in base:
        raise ConstraintError(f"clause mentions unknown letter {pattern.letter!r}")
    for index, _ in pattern.signs:
        if not 0 <= index < k:
            raise ConstraintError(f"clause references predicate {index} but only {k} predicates exist")


def encode_fo2_clauses(base, k, clauses):
    """(extended alphabet, constraint set) realizing the clauses."""
    if k < 0:
        raise ConstraintError("predicate count must be nonnegative")
    extended = extended_alphabet(base, k)
    constraints = []
    for clause in clauses:
        _validate(base, k, clause.alpha)
        letters = _consistent(base, k, clause.alpha, extended)
        if clause.kind == CLAUSE_KEY:
            constraints.extend(Key(symbol) for symbol in letters)
            constraints.extend(Denial(a, b) for a, b in combinations(letters, 2))
        elif clause.kind == CLAUSE_INCLUSION:
            if clause.alpha_prime is None:
                raise ConstraintError("inclusion clause needs a target pattern")
            _validate(base, k, clause.alpha_prime)
            targets = frozenset(_consistent(base, k, clause.alpha_prime, extended))
            constraints.extend(Inclusion(symbol, targets) for symbol in letters)
        else:
            raise ConstraintError(f"unknown clause kind {clause.kind!r}")
    return extended, ConstraintSet(extended, constraints)
