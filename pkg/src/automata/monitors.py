"""Small deterministic Büchi monitors used to constrain tails of runs."""

from src.automata.systems import BuchiAutomaton, TransitionSystem
from src.core.errors import AlphabetError


def _check_subset(alphabet, symbols):
    for symbol in symbols:
        if not 0 <= symbol < len(alphabet):
            raise AlphabetError(f"symbol {symbol} outside alphabet of size {len(alphabet)}")


def universal(alphabet):
    transitions = frozenset((0, a, 0) for a in alphabet)
    return BuchiAutomaton(TransitionSystem(alphabet, 1, transitions), 0, frozenset([0]))


def monitor_inf_often(alphabet, required):
    """Accepts words in which every symbol of ``required`` occurs infinitely often.

    States 0..k-1 wait for required[i]; state k marks a completed round and
    behaves like state 0.
    """
    _check_subset(alphabet, required)
    required = sorted(required)
    k = len(required)
    if k == 0:
        return universal(alphabet)
    transitions = set()
    for state in range(k + 1):
        waiting = 0 if state == k else state
        for a in alphabet:
            if a == required[waiting]:
                target = waiting + 1
            else:
                target = waiting
            transitions.add((state, a, target))
    return BuchiAutomaton(TransitionSystem(alphabet, k + 1, frozenset(transitions)), 0, frozenset([k]))


def monitor_avoid(alphabet, banned):
    """Accepts words containing no symbol of ``banned``."""
    _check_subset(alphabet, banned)
    transitions = frozenset((0, a, 0) for a in alphabet if a not in banned)
    return BuchiAutomaton(TransitionSystem(alphabet, 1, transitions), 0, frozenset([0]))


def monitor_inf_often_any(alphabet, symbols):
    """Accepts words in which some symbol of ``symbols`` occurs infinitely often."""
    _check_subset(alphabet, symbols)
    transitions = frozenset((state, a, 1 if a in symbols else 0) for state in (0, 1) for a in alphabet)
    return BuchiAutomaton(TransitionSystem(alphabet, 2, transitions), 0, frozenset([1]))
