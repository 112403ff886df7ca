"""Small hand-built automata and words shared by the test modules."""
from __future__ import annotations

from src.automata.alphabet import Alphabet
from src.automata.systems import BuchiAutomaton, Nfa, TransitionSystem
from src.data.constraints import ConstraintSet, Denial, Inclusion, Key


def automaton(alphabet, states, transitions, initial=0, final=(0,)):
    """Büchi automaton from ``(from, letter name, to)`` triples."""
    ts = TransitionSystem(alphabet, states, frozenset((p, alphabet.symbol(a), q) for p, a, q in transitions))
    return BuchiAutomaton(ts, initial, frozenset(final))


def nfa(alphabet, states, transitions, initial=0, finals=(0,)):
    ts = TransitionSystem(alphabet, states, frozenset((p, alphabet.symbol(a), q) for p, a, q in transitions))
    return Nfa(ts, initial, frozenset(finals))


def loop(alphabet, letters):
    """One accepting state looping on ``letters``."""
    return automaton(alphabet, 1, [(0, a, 0) for a in letters])


def cycle(alphabet, word):
    """Accepts exactly ``word`` repeated forever; state 0 is final."""
    n = len(word)
    return automaton(alphabet, n, [(i, a, (i + 1) % n) for i, a in enumerate(word)])


def a_star_b(alphabet):
    """q0 -a-> q0, q0 -b-> q1, final q1."""
    return nfa(alphabet, 2, [(0, "a", 0), (0, "b", 1)], finals=(1,))


def constraints(alphabet, *items):
    """ConstraintSet from ``("key", a)``, ``("inclusion", a, [b, ...])`` and ``("denial", a, b)`` tuples."""
    built = []
    for item in items:
        kind = item[0]
        if kind == "key":
            built.append(Key(alphabet.symbol(item[1])))
        elif kind == "inclusion":
            built.append(Inclusion(alphabet.symbol(item[1]), alphabet.symbols(item[2])))
        else:
            built.append(Denial(alphabet.symbol(item[1]), alphabet.symbol(item[2])))
    return ConstraintSet(alphabet, built)


def letters(*names):
    return Alphabet(list(names))
