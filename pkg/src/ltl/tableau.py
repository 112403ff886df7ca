"""
Closure-state tableau for data LTL in normal form.

A state fixes the letter of a position and guesses a truth value for every
elementary formula: each next-operator, each data diamond, and for every Until
and Release whether it still holds one step later. The truth of every other
subformula follows from the local expansion laws

    l U r  ==  r | (l & X(l U r))        l R r  ==  r & (l | X(l R r))

A transition p -> q requires q to honour the next-obligations of p. Data
diamonds are left unconstrained here; the translations discharge them with
data constraints. With ``profiles`` each state also carries the right flag of
its position, which the data-aware next operators consult.
"""

from dataclasses import dataclass
from itertools import product
from typing import FrozenSet, Optional

from src.core.constants import FLAG_DIFF, FLAG_SAME
from src.core.errors import AutomatonError, FragmentError
from src.debug.logger import log
from src.ltl.ast import (
    And, Atom, DiamondS, DiamondW, FalseFormula, Next, NextDiff, NextSame, Not, Or, Release, TrueFormula,
    Until, subformulas,
)
from src.ltl.normal_form import is_normal

LOGGER = "ltl.tableau"

NEXT_TYPES = (Next, NextSame, NextDiff)
DIAMOND_TYPES = (DiamondW, DiamondS)


@dataclass(frozen=True)
class ClosureState:
    letter: int
    formulas: FrozenSet[object]
    carries: FrozenSet[object]
    flag: Optional[str] = None

    def holds(self, formula):
        return formula in self.formulas


class Tableau:
    def __init__(self, formula, alphabet, profiles=False):
        if not is_normal(formula):
            raise FragmentError("the tableau expects a formula in normal form")
        if not profiles and any(isinstance(n, (NextSame, NextDiff)) for n in subformulas(formula)):
            raise FragmentError("data-aware next operators need the profile tableau")
        self.formula = formula
        self.alphabet = alphabet
        self.profiles = profiles
        self.nodes = subformulas(formula)
        self.nexts = [n for n in self.nodes if isinstance(n, NEXT_TYPES)]
        self.diamonds = [n for n in self.nodes if isinstance(n, DIAMOND_TYPES)]
        self.temporal = [n for n in self.nodes if isinstance(n, (Until, Release))]
        self.untils = [n for n in self.temporal if isinstance(n, Until)]
        self.releases = [n for n in self.temporal if isinstance(n, Release)]
        self.arguments = list(dict.fromkeys(d.item for d in self.diamonds))
        self.strong_arguments = list(dict.fromkeys(d.item for d in self.diamonds if isinstance(d, DiamondS)))
        self.states = self._enumerate()
        self._targets = list(dict.fromkeys([n.item for n in self.nexts if isinstance(n, Next)] + self.temporal))
        self._groups = {}
        for i, state in enumerate(self.states):
            self._groups.setdefault(self._key(state), []).append(i)
        log("tableau: %d states, %d elementary formulas", len(self.states), len(self.nexts) + len(self.diamonds) + len(self.temporal), name=LOGGER)

    def _truth(self, letter, guessed, carries):
        true = set()
        name = self.alphabet.name(letter)
        for node in self.nodes:
            if isinstance(node, TrueFormula):
                holds = True
            elif isinstance(node, FalseFormula):
                holds = False
            elif isinstance(node, Atom):
                holds = node.name == name
            elif isinstance(node, Not):
                holds = node.item not in true
            elif isinstance(node, And):
                holds = node.left in true and node.right in true
            elif isinstance(node, Or):
                holds = node.left in true or node.right in true
            elif isinstance(node, Until):
                holds = node.right in true or (node.left in true and node in carries)
            elif isinstance(node, Release):
                holds = node.right in true and (node.left in true or node in carries)
            else:
                holds = node in guessed
            if holds:
                true.add(node)
        return frozenset(true)

    def _enumerate(self):
        guessable = self.nexts + self.diamonds
        flags = (FLAG_SAME, FLAG_DIFF) if self.profiles else (None,)
        states = []
        for letter in self.alphabet:
            for bits in product((False, True), repeat=len(guessable) + len(self.temporal)):
                guessed = frozenset(n for n, bit in zip(guessable, bits) if bit)
                carries = frozenset(n for n, bit in zip(self.temporal, bits[len(guessable):]) if bit)
                formulas = self._truth(letter, guessed, carries)
                if any(isinstance(d, DiamondW) and d.item in formulas and d not in formulas for d in self.diamonds):
                    continue
                for flag in flags:
                    if flag == FLAG_DIFF and any(isinstance(n, NextSame) and n in formulas for n in self.nexts):
                        continue
                    if flag == FLAG_SAME and any(isinstance(n, NextDiff) and n in formulas for n in self.nexts):
                        continue
                    state = ClosureState(letter, formulas, carries, flag)
                    self._check_state(state)
                    states.append(state)
        return states

    def _check_state(self, state):
        formulas = state.formulas
        letters = [n for n in formulas if isinstance(n, Atom) and n.name in self.alphabet]
        broken = (
            any(isinstance(n, FalseFormula) for n in formulas)
            or len(letters) > 1
            or any(isinstance(n, And) and not (n.left in formulas and n.right in formulas) for n in formulas)
            or any(isinstance(n, Or) and not (n.left in formulas or n.right in formulas) for n in formulas)
            or any(isinstance(n, Not) and n.item in formulas for n in formulas)
        )
        if broken:
            raise AutomatonError(f"inconsistent closure state for letter {self.alphabet.name(state.letter)!r}")

    def _key(self, state):
        return tuple(target in state.formulas for target in self._targets)

    def _required(self, state):
        wanted = {}
        for node in self.nexts:
            if isinstance(node, Next):
                wanted.setdefault(node.item, []).append(node in state.formulas)
        for node in self.temporal:
            wanted.setdefault(node, []).append(node in state.carries)
        if any(len(set(values)) > 1 for values in wanted.values()):
            return None
        return tuple(wanted[target][0] for target in self._targets)

    def _data_next_ok(self, state, following):
        for node in self.nexts:
            if isinstance(node, Next):
                continue
            wanted_flag = FLAG_SAME if isinstance(node, NextSame) else FLAG_DIFF
            holds = state.flag == wanted_flag and node.item in following.formulas
            if holds != (node in state.formulas):
                return False
        return True

    def initial(self):
        return [i for i, state in enumerate(self.states) if self.formula in state.formulas]

    def successors(self, i):
        state = self.states[i]
        key = self._required(state)
        if key is None:
            return []
        candidates = self._groups.get(key, [])
        if not self.profiles:
            return list(candidates)
        return [j for j in candidates if self._data_next_ok(state, self.states[j])]

    def acceptance(self):
        """One set per Until (false or its right side holds) and per Release (true or its right side fails)."""
        untils = tuple(
            frozenset(i for i, s in enumerate(self.states) if u not in s.formulas or u.right in s.formulas)
            for u in self.untils
        )
        releases = tuple(
            frozenset(i for i, s in enumerate(self.states) if r in s.formulas or r.right not in s.formulas)
            for r in self.releases
        )
        return untils + releases
