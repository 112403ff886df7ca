"""
Extended alphabets and the two sides of a partition attempt.

For a partition guess the automaton is copied onto a larger alphabet: every
base letter ``a`` keeps its transitions, and each class ``S`` tagged Inf adds
a pair letter ``a@S`` (for a in S) on the same edges. In four-way mode each
FinSmall class ``S`` with ``g`` constants adds constant letters ``a@S#j``
(1 <= j <= g). An attempt then splits a run at an anchor state: the finite part
is checked by a Presburger automaton, the infinite part by a tail Büchi
automaton.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Optional, Tuple

from src.automata.alphabet import Alphabet
from src.automata.monitors import monitor_avoid, monitor_inf_often
from src.automata.product import intersect_all
from src.automata.systems import BuchiAutomaton, Nfa, TransitionSystem
from src.core.constants import LOCAL_DIFF_OFFSET
from src.presburger.formula import And, EPFormula, eq_const, eq_sum, geq_const, leq_sum
from src.presburger.parikh import PresburgerAutomaton
from src.utils.subsets import set_name

BASE = "base"
PAIR = "pair"
CONSTANT = "constant"


def local_epsilon(data_symbols):
    """Size threshold separating FinSmall from FinBig classes."""
    return len(data_symbols) + LOCAL_DIFF_OFFSET


@dataclass(frozen=True)
class ExtendedSymbol:
    base: int
    subset: Optional[FrozenSet[int]] = None
    constant: Optional[int] = None

    @property
    def kind(self):
        if self.subset is None:
            return BASE
        return PAIR if self.constant is None else CONSTANT


class ExtendedAlphabet:
    """Base alphabet plus pair letters for Inf classes and constant letters for FinSmall classes."""

    def __init__(self, base, partition):
        self.base = base
        self.partition = partition
        self.data_symbols = partition.symbols
        entries = [ExtendedSymbol(a) for a in base]
        for subset in partition.inf_classes:
            entries.extend(ExtendedSymbol(a, subset) for a in sorted(subset))
        for subset in partition.small_classes:
            for j in range(1, partition.gamma_of(subset) + 1):
                entries.extend(ExtendedSymbol(a, subset, j) for a in sorted(subset))
        self.entries = tuple(entries)
        self.index = {entry: i for i, entry in enumerate(entries)}
        self.alphabet = Alphabet([self._name(entry) for entry in entries])

    def _name(self, entry):
        name = self.base.name(entry.base)
        if entry.kind == BASE:
            return name
        subset = set_name(sorted(self.base.name(b) for b in entry.subset))
        if entry.kind == PAIR:
            return f"{name}@{subset}"
        return f"{name}@{subset}#{entry.constant}"

    def __len__(self):
        return len(self.entries)

    def entry(self, symbol):
        return self.entries[symbol]

    def base_of(self, symbol):
        return self.entries[symbol].base

    def kind(self, symbol):
        return self.entries[symbol].kind

    def carries_data(self, symbol):
        return self.entries[symbol].base in self.data_symbols

    def symbols_of_kind(self, kind):
        return frozenset(i for i, entry in enumerate(self.entries) if entry.kind == kind)

    @cached_property
    def pair_symbols(self):
        return self.symbols_of_kind(PAIR)

    @cached_property
    def constant_symbols(self):
        return self.symbols_of_kind(CONSTANT)

    @cached_property
    def data_derived(self):
        """Every extended letter whose base carries data."""
        return frozenset(i for i in range(len(self.entries)) if self.carries_data(i))

    @cached_property
    def constant_ids(self):
        """(class, j) -> 1-based id, in alphabet order; used by the adjacency monitor."""
        ids = {}
        for entry in self.entries:
            if entry.kind == CONSTANT and (entry.subset, entry.constant) not in ids:
                ids[(entry.subset, entry.constant)] = len(ids) + 1
        return ids

    def constant_id(self, symbol):
        entry = self.entries[symbol]
        if entry.kind != CONSTANT:
            return 0
        return self.constant_ids[(entry.subset, entry.constant)]

    def copies_of(self, a):
        return tuple(i for i, entry in enumerate(self.entries) if entry.base == a and entry.kind != BASE)


def build_extended_system(ts, partition):
    """(extended alphabet, transition system with the same states and copied edges)."""
    extended = ExtendedAlphabet(ts.alphabet, partition)
    transitions = set(ts.transitions)
    copies = {a: extended.copies_of(a) for a in ts.alphabet}
    for p, a, q in ts.transitions:
        transitions.update((p, c, q) for c in copies[a])
    return extended, TransitionSystem(extended.alphabet, ts.state_count, frozenset(transitions))


@dataclass(frozen=True)
class AttemptSystem:
    """Extended system tried by the search; ``origin`` maps each state back to the automaton."""

    extended: ExtendedAlphabet
    ts: TransitionSystem
    initial: int
    final: FrozenSet[int]
    origin: Tuple[int, ...]


def _adjacency_product(extended, ts, initial, final):
    """Track the constant read at the previous data position; equal adjacent constants have no edge."""
    width = len(extended.constant_ids) + 1

    def state(q, last):
        return q * width + last

    transitions = set()
    for p, symbol, q in ts.transitions:
        if not extended.carries_data(symbol):
            transitions.update((state(p, last), symbol, state(q, last)) for last in range(width))
            continue
        current = extended.constant_id(symbol)
        for last in range(width):
            if current and current == last:
                continue
            transitions.add((state(p, last), symbol, state(q, current)))
    count = ts.state_count * width
    origin = tuple(s // width for s in range(count))
    product_final = frozenset(state(q, last) for q in final for last in range(width))
    return AttemptSystem(extended, TransitionSystem(extended.alphabet, count, frozenset(transitions)), state(initial, 0), product_final, origin)


def attempt_system(automaton, partition):
    extended, ts = build_extended_system(automaton.ts, partition)
    if partition.four_way and extended.constant_symbols:
        return _adjacency_product(extended, ts, automaton.initial, automaton.final)
    return AttemptSystem(extended, ts, automaton.initial, automaton.final, tuple(range(ts.state_count)))


def presburger_formula(extended, partition, constraints):
    """Count conditions on the finite part of a run for one partition guess."""
    data = sorted(partition.symbols)
    finite = partition.finite_classes
    free = len(extended)
    z = {subset: free + i for i, subset in enumerate(finite)}
    keys = constraints.key_symbols
    atoms = []
    for a in data:
        carriers = [z[s] for s in finite if a in s]
        if not carriers:
            atoms.append(eq_const([a], 0))
        elif a in keys:
            atoms.append(eq_sum([a], carriers))
        else:
            atoms.append(leq_sum(carriers, [a]))
    epsilon = local_epsilon(partition.symbols)
    for subset in finite:
        atoms.append(geq_const([z[subset]], epsilon if partition.four_way else 1))
    for symbol in sorted(extended.constant_symbols):
        if extended.base_of(symbol) in keys:
            atoms.append(eq_const([symbol], 1))
        else:
            atoms.append(geq_const([symbol], 1))
    names = tuple(f"z{set_name(sorted(extended.base.name(b) for b in s))}" for s in finite)
    return EPFormula(free, len(finite), And(tuple(atoms)), names)


def build_presburger_side(system, q, partition, constraints):
    """Runs from the initial state to anchor ``q`` whose counts admit class sizes for the guess."""
    nfa = Nfa(system.ts, system.initial, frozenset([q]))
    return PresburgerAutomaton(nfa, presburger_formula(system.extended, partition, constraints))


def tail_banned(extended, partition, constraints):
    """Letters the infinite part may not read."""
    keys = constraints.key_symbols
    carried = set()
    for subset in partition.finite_classes:
        carried |= subset
    banned = set()
    for symbol, entry in enumerate(extended.entries):
        if entry.base not in partition.symbols:
            continue
        if entry.kind == BASE and (entry.base in keys or entry.base not in carried):
            banned.add(symbol)
        elif entry.kind == CONSTANT and entry.base in keys:
            banned.add(symbol)
    return frozenset(banned)


def build_tail_buchi(system, q, partition, constraints, extra=()):
    """Accepting runs from ``q`` that repeat every pair letter and avoid banned letters."""
    alphabet = system.extended.alphabet
    automata = [BuchiAutomaton(system.ts, q, system.final)]
    if system.extended.pair_symbols:
        automata.append(monitor_inf_often(alphabet, system.extended.pair_symbols))
    banned = tail_banned(system.extended, partition, constraints)
    if banned:
        automata.append(monitor_avoid(alphabet, banned))
    automata.extend(extra)
    return intersect_all(automata)
