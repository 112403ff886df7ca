"""
Negation normal form, closure and fragment classification.

In normal form a negation sits only directly above an atom or a data diamond;
``F`` and ``G`` are unfolded into Until and Release.
"""

from enum import Enum
from functools import reduce

from src.ltl.ast import (
    FALSE, TRUE, And, Atom, DiamondS, DiamondW, FalseFormula, Finally, Globally, Next, NextDiff, NextSame,
    Not, Or, Release, TrueFormula, Until, atoms_of, subformulas, uses,
)


class Fragment(Enum):
    PLAIN = "plain"
    WEAK_ONLY = "weak"
    STRONG_ONLY = "strong"
    STRONG_WITH_PROFILES = "profiles"


def normal_form(formula):
    return _positive(formula)


def _positive(node):
    if isinstance(node, (TrueFormula, FalseFormula, Atom)):
        return node
    if isinstance(node, Not):
        return _negative(node.item)
    if isinstance(node, Finally):
        return Until(TRUE, _positive(node.item))
    if isinstance(node, Globally):
        return Release(FALSE, _positive(node.item))
    if isinstance(node, (And, Or, Until, Release)):
        return type(node)(_positive(node.left), _positive(node.right))
    return type(node)(_positive(node.item))


def _negative(node):
    """Normal form of the negation of ``node``."""
    if isinstance(node, TrueFormula):
        return FALSE
    if isinstance(node, FalseFormula):
        return TRUE
    if isinstance(node, Atom):
        return Not(node)
    if isinstance(node, Not):
        return _positive(node.item)
    if isinstance(node, And):
        return Or(_negative(node.left), _negative(node.right))
    if isinstance(node, Or):
        return And(_negative(node.left), _negative(node.right))
    if isinstance(node, Next):
        return Next(_negative(node.item))
    if isinstance(node, NextSame):
        return Or(NextDiff(TRUE), NextSame(_negative(node.item)))
    if isinstance(node, NextDiff):
        return Or(NextSame(TRUE), NextDiff(_negative(node.item)))
    if isinstance(node, Until):
        return Release(_negative(node.left), _negative(node.right))
    if isinstance(node, Release):
        return Until(_negative(node.left), _negative(node.right))
    if isinstance(node, Finally):
        return Release(FALSE, _negative(node.item))
    if isinstance(node, Globally):
        return Until(TRUE, _negative(node.item))
    return Not(type(node)(_positive(node.item)))


def is_normal(formula):
    for node in subformulas(formula):
        if isinstance(node, (Finally, Globally)):
            return False
        if isinstance(node, Not) and not isinstance(node.item, (Atom, DiamondW, DiamondS)):
            return False
    return True


def _any_of(letters):
    atoms = [Atom(a) for a in letters]
    return reduce(Or, atoms) if atoms else FALSE


def closure(formula, alphabet=None):
    """Least set holding the formula, every letter, every subformula, and for
    each negated letter the disjunction of the other letters."""
    letters = list(alphabet.names) if alphabet is not None else atoms_of(formula)
    result = set(Atom(a) for a in letters)
    pending = [formula]
    while pending:
        node = pending.pop()
        if node in result:
            continue
        result.add(node)
        pending.extend(node.children())
        if isinstance(node, Not) and isinstance(node.item, Atom):
            pending.append(_any_of([a for a in letters if a != node.item.name]))
    return frozenset(result)


def fragment_of(formula):
    """Smallest fragment the formula belongs to.

    Formulas mixing both diamonds count as strong: the weak diamond rewrites
    into ``psi | Ds psi``.
    """
    if uses(formula, NextSame, NextDiff):
        return Fragment.STRONG_WITH_PROFILES
    if uses(formula, DiamondS):
        return Fragment.STRONG_ONLY
    if uses(formula, DiamondW):
        return Fragment.WEAK_ONLY
    return Fragment.PLAIN


def weak_as_strong(formula):
    """Replace every ``Dw psi`` by ``psi | Ds psi``."""
    if isinstance(formula, DiamondW):
        inner = weak_as_strong(formula.item)
        return Or(inner, DiamondS(inner))
    if isinstance(formula, (And, Or, Until, Release)):
        return type(formula)(weak_as_strong(formula.left), weak_as_strong(formula.right))
    if formula.children():
        return type(formula)(weak_as_strong(formula.item))
    return formula
