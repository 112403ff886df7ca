"""
Truth of data LTL formulas on lasso data words.

Every subformula is periodic on a lasso: its truth at position ``i`` past the
prefix equals its truth at the matching position of the first cycle copy. So
truth is computed once per canonical position (prefix plus one cycle copy),
with Until and Release solved as least and greatest fixpoints over the
successor map, which loops back from the last canonical position to the
start of the cycle.

``prefix_bounds`` works on partially known words instead: letters follow a
lasso but values are known only on a finite window, and every subformula gets
a lower and an upper truth value.
"""

from functools import lru_cache

from src.core.errors import PreconditionError
from src.ltl.ast import (
    And, Atom, DiamondS, DiamondW, FalseFormula, Finally, Globally, Next, NextDiff, NextSame, Not, Or,
    Release, TrueFormula, Until,
)


class _Lasso:
    def __init__(self, word):
        self.word = word
        self.entries = word.all_entries()
        self.loop = len(word.prefix)
        self.size = len(self.entries)
        self.values = [value for _, value in self.entries]

    def next(self, i):
        return i + 1 if i + 1 < self.size else self.loop

    def same_next(self, i):
        return self.values[i] == self.values[self.next(i)]


def _fixpoint(lasso, step, start):
    truth = [start] * lasso.size
    changed = True
    while changed:
        changed = False
        for i in reversed(range(lasso.size)):
            value = step(i, truth[lasso.next(i)])
            if value != truth[i]:
                truth[i] = value
                changed = True
    return truth


def truth_table(word, formula):
    """Truth of ``formula`` at every canonical position (0-based) of the lasso."""
    lasso = _Lasso(word)
    names = word.alphabet

    @lru_cache(maxsize=None)
    def table(node):
        n = lasso.size
        if isinstance(node, TrueFormula):
            return (True,) * n
        if isinstance(node, FalseFormula):
            return (False,) * n
        if isinstance(node, Atom):
            return tuple(node.name in names and symbol == names.symbol(node.name) for symbol, _ in lasso.entries)
        if isinstance(node, Not):
            return tuple(not t for t in table(node.item))
        if isinstance(node, And):
            return tuple(x and y for x, y in zip(table(node.left), table(node.right)))
        if isinstance(node, Or):
            return tuple(x or y for x, y in zip(table(node.left), table(node.right)))
        if isinstance(node, (Next, NextSame, NextDiff)):
            inner = table(node.item)
            result = []
            for i in range(n):
                holds = inner[lasso.next(i)]
                if isinstance(node, NextSame):
                    holds = holds and lasso.same_next(i)
                elif isinstance(node, NextDiff):
                    holds = holds and not lasso.same_next(i)
                result.append(holds)
            return tuple(result)
        if isinstance(node, (Until, Finally)):
            left = (True,) * n if isinstance(node, Finally) else table(node.left)
            right = table(node.item if isinstance(node, Finally) else node.right)
            return tuple(_fixpoint(lasso, lambda i, after: right[i] or (left[i] and after), False))
        if isinstance(node, (Release, Globally)):
            left = (False,) * n if isinstance(node, Globally) else table(node.left)
            right = table(node.item if isinstance(node, Globally) else node.right)
            return tuple(_fixpoint(lasso, lambda i, after: right[i] and (left[i] or after), True))
        if isinstance(node, (DiamondW, DiamondS)):
            inner = table(node.item)
            strong = isinstance(node, DiamondS)
            result = []
            for i in range(n):
                # a cycle position's value recurs one period later, so j == i still counts there
                result.append(any(
                    inner[j] and lasso.values[j] == lasso.values[i] and (not strong or j != i or i >= lasso.loop)
                    for j in range(n)
                ))
            return tuple(result)
        raise TypeError(f"not a formula: {node!r}")

    return table(formula)


def evaluate(word, i, formula):
    """Truth of ``formula`` at 1-based position ``i`` of the lasso ``word``."""
    if i < 1:
        raise PreconditionError("positions are 1-based")
    return truth_table(word, formula)[word.canonical(i - 1)]


class _Tail:
    """Letter lasso whose positions carry unknown values."""

    def __init__(self, prefix_labels, cycle_labels):
        if not cycle_labels:
            raise PreconditionError("the letter lasso needs a nonempty cycle")
        self.labels = tuple(prefix_labels) + tuple(cycle_labels)
        self.loop = len(prefix_labels)
        self.size = len(self.labels)

    def next(self, i):
        return i + 1 if i + 1 < self.size else self.loop

    def canonical(self, p):
        if p < self.size:
            return p
        return self.loop + (p - self.loop) % (self.size - self.loop)


def _operands(node, table, n):
    """(must, may) tables of the left and right side of an Until or Release, sugar included."""
    if isinstance(node, Finally):
        return ((True,) * n, (True,) * n), table(node.item)
    if isinstance(node, Globally):
        return ((False,) * n, (False,) * n), table(node.item)
    return table(node.left), table(node.right)


def prefix_bounds(window, prefix_labels, cycle_labels, formula):
    """
    Three-valued truth of ``formula`` at position 1 over every data word whose
    letters follow the lasso ``prefix_labels (cycle_labels)^ω`` and whose first
    positions are exactly ``window``.

    Returns ``(must, may)``: ``must`` means every such word is a model,
    ``not may`` means none is. Values past the window are unknown, so the
    data operators only decide inside it.
    """
    tail = _Tail(prefix_labels, cycle_labels)
    n = len(window)
    if n == 0:
        raise PreconditionError("the window needs at least one position")
    if any(label != tail.labels[tail.canonical(p)] for p, label in enumerate(window.labels)):
        raise PreconditionError("window letters disagree with the letter lasso")
    names = window.alphabet
    values = window.values
    boundary = tail.canonical(n)

    def letter(node, symbol):
        return node.name in names and symbol == names.symbol(node.name)

    @lru_cache(maxsize=None)
    def tail_table(node):
        s = tail.size
        if isinstance(node, (TrueFormula, FalseFormula)):
            truth = (isinstance(node, TrueFormula),) * s
            return truth, truth
        if isinstance(node, Atom):
            truth = tuple(letter(node, symbol) for symbol in tail.labels)
            return truth, truth
        if isinstance(node, Not):
            must, may = tail_table(node.item)
            return tuple(not x for x in may), tuple(not x for x in must)
        if isinstance(node, (And, Or)):
            join = all if isinstance(node, And) else any
            (lm, ly), (rm, ry) = tail_table(node.left), tail_table(node.right)
            return tuple(map(join, zip(lm, rm))), tuple(map(join, zip(ly, ry)))
        if isinstance(node, (Next, NextSame, NextDiff)):
            must, may = tail_table(node.item)
            shifted_may = tuple(may[tail.next(i)] for i in range(s))
            if isinstance(node, Next):
                return tuple(must[tail.next(i)] for i in range(s)), shifted_may
            return (False,) * s, shifted_may
        if isinstance(node, (Until, Finally)):
            (lm, ly), (rm, ry) = _operands(node, tail_table, s)
            must = _fixpoint(tail, lambda i, after: rm[i] or (lm[i] and after), False)
            may = _fixpoint(tail, lambda i, after: ry[i] or (ly[i] and after), False)
            return tuple(must), tuple(may)
        if isinstance(node, (Release, Globally)):
            (lm, ly), (rm, ry) = _operands(node, tail_table, s)
            must = _fixpoint(tail, lambda i, after: rm[i] and (lm[i] or after), True)
            may = _fixpoint(tail, lambda i, after: ry[i] and (ly[i] or after), True)
            return tuple(must), tuple(may)
        if isinstance(node, DiamondW):
            return tail_table(node.item)[0], (True,) * s
        if isinstance(node, DiamondS):
            return (False,) * s, (True,) * s
        raise TypeError(f"not a formula: {node!r}")

    # window tables have n + 1 entries, the last one being the first position past the window
    @lru_cache(maxsize=None)
    def window_table(node):
        edge_must, edge_may = (t[boundary] for t in tail_table(node))
        if isinstance(node, (TrueFormula, FalseFormula, Atom)):
            truth = tuple(tail_table(node)[0][tail.canonical(p)] for p in range(n))
            return truth + (edge_must,), truth + (edge_may,)
        if isinstance(node, Not):
            must, may = window_table(node.item)
            return tuple(not x for x in may), tuple(not x for x in must)
        if isinstance(node, (And, Or)):
            join = all if isinstance(node, And) else any
            (lm, ly), (rm, ry) = window_table(node.left), window_table(node.right)
            return tuple(map(join, zip(lm, rm))), tuple(map(join, zip(ly, ry)))
        if isinstance(node, (Next, NextSame, NextDiff)):
            inner_must, inner_may = window_table(node.item)
            must, may = [], []
            for i in range(n):
                if isinstance(node, Next):
                    must.append(inner_must[i + 1])
                    may.append(inner_may[i + 1])
                elif i + 1 == n:
                    must.append(False)
                    may.append(inner_may[n])
                else:
                    same = values[i] == values[i + 1]
                    holds = same if isinstance(node, NextSame) else not same
                    must.append(holds and inner_must[i + 1])
                    may.append(holds and inner_may[i + 1])
            return tuple(must) + (edge_must,), tuple(may) + (edge_may,)
        if isinstance(node, (Until, Finally, Release, Globally)):
            (lm, ly), (rm, ry) = _operands(node, window_table, n + 1)
            must = [None] * n + [edge_must]
            may = [None] * n + [edge_may]
            for i in reversed(range(n)):
                if isinstance(node, (Until, Finally)):
                    must[i] = rm[i] or (lm[i] and must[i + 1])
                    may[i] = ry[i] or (ly[i] and may[i + 1])
                else:
                    must[i] = rm[i] and (lm[i] or must[i + 1])
                    may[i] = ry[i] and (ly[i] or may[i + 1])
            return tuple(must), tuple(may)
        if isinstance(node, (DiamondW, DiamondS)):
            inner_must = window_table(node.item)[0]
            strong = isinstance(node, DiamondS)
            must = tuple(
                any(inner_must[j] and values[j] == values[i] and (not strong or j != i) for j in range(n))
                for i in range(n)
            )
            return must + (edge_must,), (True,) * (n + 1)
        raise TypeError(f"not a formula: {node!r}")

    must, may = window_table(formula)
    return must[0], may[0]
