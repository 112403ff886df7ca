"""Formulas of LTL with weak/strong data diamonds and data-aware next operators."""

from dataclasses import dataclass


class Formula:
    """Base class; every node is a frozen dataclass so formulas hash structurally."""

    def children(self):
        return ()


@dataclass(frozen=True)
class TrueFormula(Formula):
    pass


@dataclass(frozen=True)
class FalseFormula(Formula):
    pass


TRUE = TrueFormula()
FALSE = FalseFormula()


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class _Unary(Formula):
    item: Formula

    def children(self):
        return (self.item,)


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


class Not(_Unary):
    pass


class Next(_Unary):
    pass


class NextSame(_Unary):
    """Next position exists with the same data value and satisfies the operand."""


class NextDiff(_Unary):
    """Next position carries a different data value and satisfies the operand."""


class DiamondW(_Unary):
    """Some position with the same value (possibly this one) satisfies the operand."""


class DiamondS(_Unary):
    """Some other position with the same value satisfies the operand."""


class Finally(_Unary):
    pass


class Globally(_Unary):
    pass


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Until(_Binary):
    pass


class Release(_Binary):
    pass


UNARY_TYPES = (Not, Next, NextSame, NextDiff, DiamondW, DiamondS, Finally, Globally)
BINARY_TYPES = (And, Or, Until, Release)


def implies(left, right):
    return Or(Not(left), right)


def subformulas(formula):
    """Every node of the formula, children before parents, without repeats."""
    seen = []

    def visit(node):
        for child in node.children():
            visit(child)
        if node not in seen:
            seen.append(node)

    visit(formula)
    return seen


def atoms_of(formula):
    return sorted({node.name for node in subformulas(formula) if isinstance(node, Atom)})


def size(formula):
    return 1 + sum(size(child) for child in formula.children())


def uses(formula, *types):
    return any(isinstance(node, types) for node in subformulas(formula))
