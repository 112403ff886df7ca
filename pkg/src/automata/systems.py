"""
Transition systems and the automata built on top of them.

All values are immutable after construction. States are dense integers
``0 .. state_count - 1``; transitions are ``(from, symbol, to)`` triples.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Tuple

import networkx as nx

from src.automata.alphabet import Alphabet
from src.core.errors import AlphabetError, AutomatonError


@dataclass(frozen=True)
class TransitionSystem:
    alphabet: Alphabet
    state_count: int
    transitions: FrozenSet[Tuple[int, int, int]]

    def __post_init__(self):
        transitions = frozenset(tuple(t) for t in self.transitions)
        object.__setattr__(self, "transitions", transitions)
        if self.state_count < 0:
            raise AutomatonError("negative state count")
        size = len(self.alphabet)
        for p, a, q in transitions:
            if not (0 <= p < self.state_count and 0 <= q < self.state_count):
                raise AutomatonError(f"transition {(p, a, q)} leaves the state space of size {self.state_count}")
            if not 0 <= a < size:
                raise AlphabetError(f"transition {(p, a, q)} uses a symbol outside the alphabet")

    @cached_property
    def out_edges(self):
        """state -> tuple of (symbol, target), ordered by target then symbol."""
        table = {state: [] for state in range(self.state_count)}
        for p, a, q in self.transitions:
            table[p].append((a, q))
        return {state: tuple(sorted(edges, key=lambda edge: (edge[1], edge[0]))) for state, edges in table.items()}

    @cached_property
    def sorted_transitions(self):
        return tuple(sorted(self.transitions))

    @cached_property
    def graph(self):
        g = nx.DiGraph()
        g.add_nodes_from(range(self.state_count))
        for p, a, q in self.transitions:
            if g.has_edge(p, q):
                g[p][q]["symbols"].add(a)
            else:
                g.add_edge(p, q, symbols={a})
        return g

    def reachable(self, sources):
        seen = set()
        for source in sources:
            if source not in seen:
                seen.add(source)
                seen |= nx.descendants(self.graph, source)
        return frozenset(seen)

    def coreachable(self, targets):
        seen = set()
        for target in targets:
            if target not in seen:
                seen.add(target)
                seen |= nx.ancestors(self.graph, target)
        return frozenset(seen)

    def symbols_used(self):
        return frozenset(a for _, a, _ in self.transitions)

    def step(self, states, symbol):
        return frozenset(q for p in states for a, q in self.out_edges[p] if a == symbol)

    def restrict(self, allowed_symbols):
        kept = frozenset(t for t in self.transitions if t[1] in allowed_symbols)
        return TransitionSystem(self.alphabet, self.state_count, kept)


def _check_state(ts, state, what):
    if not 0 <= state < ts.state_count:
        raise AutomatonError(f"{what} {state} outside the state space of size {ts.state_count}")


@dataclass(frozen=True)
class BuchiAutomaton:
    ts: TransitionSystem
    initial: int
    final: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "final", frozenset(self.final))
        _check_state(self.ts, self.initial, "initial state")
        for state in self.final:
            _check_state(self.ts, state, "final state")

    @property
    def alphabet(self):
        return self.ts.alphabet

    @property
    def state_count(self):
        return self.ts.state_count

    def rooted(self, state):
        """The same transition system started from ``state``."""
        return BuchiAutomaton(self.ts, state, self.final)

    def with_final(self, final):
        return BuchiAutomaton(self.ts, self.initial, frozenset(final))


@dataclass(frozen=True)
class Nfa:
    ts: TransitionSystem
    initial: int
    finals: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "finals", frozenset(self.finals))
        _check_state(self.ts, self.initial, "initial state")
        for state in self.finals:
            _check_state(self.ts, state, "final state")

    @property
    def alphabet(self):
        return self.ts.alphabet


@dataclass(frozen=True)
class GeneralizedBuchi:
    """Büchi automaton with several acceptance sets, all visited infinitely often."""

    ts: TransitionSystem
    initial: int
    acceptance: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "acceptance", tuple(frozenset(s) for s in self.acceptance))
        _check_state(self.ts, self.initial, "initial state")

    def degeneralize(self):
        """Counter construction: layer i waits for a visit to acceptance set i."""
        sets = self.acceptance
        if not sets:
            return BuchiAutomaton(self.ts, self.initial, frozenset(range(self.ts.state_count)))
        k = len(sets)
        index = {}
        order = []
        transitions = set()

        def intern(node):
            if node not in index:
                index[node] = len(order)
                order.append(node)
            return index[node]

        intern((self.initial, 0))
        cursor = 0
        while cursor < len(order):
            state, layer = order[cursor]
            source = index[(state, layer)]
            next_layer = (layer + 1) % k if state in sets[layer] else layer
            for a, target in self.ts.out_edges[state]:
                transitions.add((source, a, intern((target, next_layer))))
            cursor += 1

        final = frozenset(i for i, (state, layer) in enumerate(order) if layer == 0 and state in sets[0])
        ts = TransitionSystem(self.ts.alphabet, len(order), frozenset(transitions))
        return BuchiAutomaton(ts, 0, final)


@dataclass(frozen=True)
class Lasso:
    """Ultimately periodic run: prefix_states[i] reads prefix_word[i]; the cycle closes on itself.

    The state after the prefix is ``cycle_states[0]``; when the prefix is empty
    the run starts there.
    """

    prefix_states: Tuple[int, ...]
    prefix_word: Tuple[int, ...]
    cycle_states: Tuple[int, ...]
    cycle_word: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        for name in ("prefix_states", "prefix_word", "cycle_states", "cycle_word"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.cycle_word:
            raise AutomatonError("lasso cycle must be nonempty")
        if len(self.prefix_states) != len(self.prefix_word) or len(self.cycle_states) != len(self.cycle_word):
            raise AutomatonError("lasso states and words must have equal length")

    @property
    def start(self):
        return self.prefix_states[0] if self.prefix_states else self.cycle_states[0]

    def steps(self):
        """All (from, symbol, to) triples used by the run, prefix first."""
        states = self.prefix_states + self.cycle_states
        word = self.prefix_word + self.cycle_word
        result = []
        for i, symbol in enumerate(word):
            if i + 1 < len(states):
                target = states[i + 1]
            else:
                target = self.cycle_states[0]
            result.append((states[i], symbol, target))
        return result

    def replays(self, automaton):
        """True iff the run is a valid accepting run of ``automaton``."""
        if self.start != automaton.initial:
            return False
        transitions = automaton.ts.transitions
        if any(step not in transitions for step in self.steps()):
            return False
        return any(state in automaton.final for state in self.cycle_states)
