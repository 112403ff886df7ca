"""
ASCII syntax for data LTL.

    formula := implication
    implication := disjunction ['->' implication]
    disjunction := conjunction {'|' conjunction}
    conjunction := temporal {'&' temporal}
    temporal := unary [('U' | 'R') temporal]
    unary := ('!' | 'X' | 'Xs' | 'Xd' | 'F' | 'G' | 'Dw' | 'Ds') unary | atom
    atom := 'true' | 'false' | ident | '(' formula ')'

``a -> b`` is read as ``!a | b``. The printer parenthesizes every binary
node, so printing and parsing again gives back the same tree.
"""

import re

from src.core.errors import LtlSyntaxError
from src.ltl.ast import (
    FALSE, TRUE, And, Atom, DiamondS, DiamondW, FalseFormula, Finally, Globally, Next, NextDiff,
    NextSame, Not, Or, Release, TrueFormula, Until,
)

UNARY = {"!": Not, "X": Next, "Xs": NextSame, "Xd": NextDiff, "F": Finally, "G": Globally, "Dw": DiamondW, "Ds": DiamondS}
BINARY = {Until: "U", Release: "R", And: "&", Or: "|"}
KEYWORDS = {"true", "false", "U", "R"} | set(UNARY)

TOKEN = re.compile(r"\s*(?:(->)|([!&|()])|([A-Za-z_][A-Za-z0-9_]*))")


def tokenize(text):
    """(token, position) pairs; positions are 0-based character offsets."""
    tokens = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        match = TOKEN.match(text, i)
        if not match:
            raise LtlSyntaxError(f"unexpected character {text[i]!r}", i)
        token = match.group(1) or match.group(2) or match.group(3)
        tokens.append((token, match.start(match.lastindex)))
        i = match.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def position(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def take(self, expected=None):
        token = self.peek()
        if token is None or (expected is not None and token != expected):
            what = "end of input" if token is None else repr(token)
            wanted = f"expected {expected!r}" if expected else "expected a formula"
            raise LtlSyntaxError(f"{wanted}, found {what}", self.position())
        self.i += 1
        return token

    def parse(self):
        if not self.tokens:
            raise LtlSyntaxError("empty formula", 0)
        formula = self.implication()
        if self.peek() is not None:
            raise LtlSyntaxError(f"unexpected {self.peek()!r}", self.position())
        return formula

    def implication(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Or(Not(left), self.implication())
        return left

    def disjunction(self):
        formula = self.conjunction()
        while self.peek() == "|":
            self.take()
            formula = Or(formula, self.conjunction())
        return formula

    def conjunction(self):
        formula = self.temporal()
        while self.peek() == "&":
            self.take()
            formula = And(formula, self.temporal())
        return formula

    def temporal(self):
        left = self.unary()
        if self.peek() == "U":
            self.take()
            return Until(left, self.temporal())
        if self.peek() == "R":
            self.take()
            return Release(left, self.temporal())
        return left

    def unary(self):
        token = self.peek()
        if token in UNARY:
            self.take()
            return UNARY[token](self.unary())
        return self.atom()

    def atom(self):
        token = self.peek()
        if token == "(":
            self.take()
            formula = self.implication()
            self.take(")")
            return formula
        if token == "true":
            self.take()
            return TRUE
        if token == "false":
            self.take()
            return FALSE
        if token is not None and token not in KEYWORDS and token not in ("->", "!", "&", "|", ")"):
            self.take()
            return Atom(token)
        what = "end of input" if token is None else repr(token)
        raise LtlSyntaxError(f"expected a formula, found {what}", self.position())


def parse(text):
    return _Parser(text).parse()


def to_text(formula):
    """Inverse of ``parse`` up to whitespace and redundant parentheses."""
    if isinstance(formula, TrueFormula):
        return "true"
    if isinstance(formula, FalseFormula):
        return "false"
    if isinstance(formula, Atom):
        return formula.name
    for operator, token in UNARY.items():
        if type(formula) is token:
            return f"{operator} {to_text(formula.item)}" if operator != "!" else f"!{to_text(formula.item)}"
    return f"({to_text(formula.left)} {BINARY[type(formula)]} {to_text(formula.right)})"
