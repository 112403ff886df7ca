"""
Existential Presburger formulas over Parikh images.

Variables are integers: ``0 .. k-1`` are the free count variables x_a (one
per alphabet symbol, in alphabet order); bound variables follow.
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from src.core.errors import FormulaError


class AtomKind(Enum):
    SUM_LEQ_SUM = "SumLeqSum"
    SUM_LEQ_CONST = "SumLeqConst"
    SUM_GEQ_CONST = "SumGeqConst"
    SUM_EQ_SUM = "SumEqSum"
    SUM_EQ_CONST = "SumEqConst"


@dataclass(frozen=True)
class LinearRow:
    """sum(coef * x) <sense> rhs with sense one of '<=', '>=', '=='."""

    coefficients: Tuple[Tuple[int, int], ...]
    sense: str
    rhs: int

    def holds(self, values):
        total = sum(coef * values[var] for var, coef in self.coefficients)
        if self.sense == "<=":
            return total <= self.rhs
        if self.sense == ">=":
            return total >= self.rhs
        return total == self.rhs

    def variables(self):
        return {var for var, _ in self.coefficients}


def make_row(coefficients, sense, rhs):
    merged = Counter()
    for var, coef in coefficients:
        merged[var] += coef
    cleaned = tuple(sorted((var, coef) for var, coef in merged.items() if coef != 0))
    return LinearRow(cleaned, sense, rhs)


@dataclass(frozen=True)
class LinearAtom:
    kind: AtomKind
    lhs: Tuple[int, ...]
    rhs: Tuple[int, ...] = ()
    const: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", AtomKind(self.kind))
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if self.const < 0:
            raise FormulaError(f"negative constant in {self}")
        if self.kind in (AtomKind.SUM_LEQ_SUM, AtomKind.SUM_EQ_SUM):
            if self.const != 0:
                raise FormulaError(f"{self.kind.value} takes no constant")
        elif self.rhs:
            raise FormulaError(f"{self.kind.value} compares against a constant, not variables")

    def variables(self):
        return set(self.lhs) | set(self.rhs)

    def difference(self):
        return [(var, 1) for var in self.lhs] + [(var, -1) for var in self.rhs]

    def rows(self):
        """Positive form as linear rows (conjunction)."""
        diff = self.difference()
        if self.kind is AtomKind.SUM_LEQ_SUM:
            return [make_row(diff, "<=", 0)]
        if self.kind is AtomKind.SUM_EQ_SUM:
            return [make_row(diff, "==", 0)]
        if self.kind is AtomKind.SUM_LEQ_CONST:
            return [make_row(diff, "<=", self.const)]
        if self.kind is AtomKind.SUM_GEQ_CONST:
            return [make_row(diff, ">=", self.const)]
        return [make_row(diff, "==", self.const)]

    def negated_rows(self):
        """Negated form as a disjunction of single rows over the integers."""
        diff = self.difference()
        if self.kind is AtomKind.SUM_LEQ_SUM:
            return [make_row(diff, ">=", 1)]
        if self.kind is AtomKind.SUM_LEQ_CONST:
            return [make_row(diff, ">=", self.const + 1)]
        if self.kind is AtomKind.SUM_GEQ_CONST:
            return [make_row(diff, "<=", self.const - 1)]
        rhs = 0 if self.kind is AtomKind.SUM_EQ_SUM else self.const
        return [make_row(diff, ">=", rhs + 1), make_row(diff, "<=", rhs - 1)]

    def holds(self, values):
        return all(row.holds(values) for row in self.rows())


@dataclass(frozen=True)
class And:
    items: Tuple[object, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Or:
    items: Tuple[object, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Not:
    item: object


TRUE = And(())
FALSE = Or(())


def matrix_variables(matrix):
    if isinstance(matrix, LinearAtom):
        return matrix.variables()
    if isinstance(matrix, Not):
        return matrix_variables(matrix.item)
    found = set()
    for item in matrix.items:
        found |= matrix_variables(item)
    return found


def eval_matrix(matrix, values):
    if isinstance(matrix, LinearAtom):
        return matrix.holds(values)
    if isinstance(matrix, Not):
        return not eval_matrix(matrix.item, values)
    if isinstance(matrix, And):
        return all(eval_matrix(item, values) for item in matrix.items)
    if isinstance(matrix, Or):
        return any(eval_matrix(item, values) for item in matrix.items)
    raise FormulaError(f"not a formula node: {matrix!r}")


@dataclass(frozen=True)
class EPFormula:
    """exists bound_vars . matrix, with free variables x_0 .. x_{free_count-1}."""

    free_count: int
    bound_count: int
    matrix: object = TRUE
    bound_names: Tuple[str, ...] = ()

    def __post_init__(self):
        limit = self.free_count + self.bound_count
        for var in matrix_variables(self.matrix):
            if not 0 <= var < limit:
                raise FormulaError(f"variable {var} is not declared (have {limit} variables)")

    @property
    def var_count(self):
        return self.free_count + self.bound_count

    def bound_var(self, i):
        return self.free_count + i

    def mentioned_free(self):
        return {var for var in matrix_variables(self.matrix) if var < self.free_count}

    def dnf(self):
        return to_dnf(self.matrix)


def eval_formula(formula, assignment, bound_assignment=()):
    """Truth of the matrix under a complete assignment of free and bound variables."""
    assignment = tuple(assignment)
    bound_assignment = tuple(bound_assignment)
    if len(assignment) != formula.free_count:
        raise FormulaError(f"expected {formula.free_count} free values, got {len(assignment)}")
    if len(bound_assignment) != formula.bound_count:
        raise FormulaError(f"expected {formula.bound_count} bound values, got {len(bound_assignment)}")
    return eval_matrix(formula.matrix, assignment + bound_assignment)


def to_dnf(matrix, negate=False):
    """List of branches; each branch is a list of LinearRow (conjunction)."""
    if isinstance(matrix, LinearAtom):
        if negate:
            return [[row] for row in matrix.negated_rows()]
        return [matrix.rows()]
    if isinstance(matrix, Not):
        return to_dnf(matrix.item, not negate)
    conjunctive = isinstance(matrix, And) != negate
    parts = [to_dnf(item, negate) for item in matrix.items]
    if conjunctive:
        branches = [[]]
        for part in parts:
            branches = [branch + extra for branch in branches for extra in part]
        return branches
    return [branch for part in parts for branch in part]


# Sugar for building atoms


def leq_sum(lhs, rhs):
    return LinearAtom(AtomKind.SUM_LEQ_SUM, tuple(lhs), tuple(rhs))


def eq_sum(lhs, rhs):
    return LinearAtom(AtomKind.SUM_EQ_SUM, tuple(lhs), tuple(rhs))


def leq_const(lhs, const):
    return LinearAtom(AtomKind.SUM_LEQ_CONST, tuple(lhs), (), const)


def geq_const(lhs, const):
    return LinearAtom(AtomKind.SUM_GEQ_CONST, tuple(lhs), (), const)


def eq_const(lhs, const):
    return LinearAtom(AtomKind.SUM_EQ_CONST, tuple(lhs), (), const)
