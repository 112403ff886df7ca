"""Synchronous products of Büchi automata."""

from src.automata.alphabet import require_same
from src.automata.systems import BuchiAutomaton, GeneralizedBuchi, TransitionSystem


def explore(start, successors):
    """Reachable part of an implicit system; returns (index, order, transitions)."""
    index = {start: 0}
    order = [start]
    transitions = set()
    cursor = 0
    while cursor < len(order):
        node = order[cursor]
        for a, target in successors(node):
            if target not in index:
                index[target] = len(order)
                order.append(target)
            transitions.add((cursor, a, index[target]))
        cursor += 1
    return index, order, frozenset(transitions)


def _joint_edges(automata, states):
    """Symbol-synchronized successor tuples of a product state."""
    per_symbol = None
    for automaton, state in zip(automata, states):
        table = {}
        for a, q in automaton.ts.out_edges[state]:
            table.setdefault(a, []).append(q)
        if per_symbol is None:
            per_symbol = {a: [(q,) for q in targets] for a, targets in table.items()}
        else:
            per_symbol = {
                a: [prefix + (q,) for prefix in combos for q in table[a]]
                for a, combos in per_symbol.items()
                if a in table
            }
        if not per_symbol:
            return []
    return [(a, combo) for a in sorted(per_symbol) for combo in per_symbol[a]]


def buchi_intersect(first, second):
    """Two-phase product: phase 0 waits for a final state of ``first``, phase 1 for one of ``second``."""
    require_same(first.alphabet, second.alphabet)

    def successors(node):
        p, q, phase = node
        if phase == 0:
            next_phase = 1 if p in first.final else 0
        else:
            next_phase = 0 if q in second.final else 1
        return [(a, (p2, q2, next_phase)) for a, (p2, q2) in _joint_edges((first, second), (p, q))]

    _, order, transitions = explore((first.initial, second.initial, 0), successors)
    final = frozenset(i for i, (p, _, phase) in enumerate(order) if phase == 0 and p in first.final)
    ts = TransitionSystem(first.alphabet, len(order), transitions)
    return BuchiAutomaton(ts, 0, final)


def intersect_all(automata):
    """Product of several Büchi automata via a generalized product and degeneralization."""
    automata = list(automata)
    if not automata:
        raise ValueError("intersect_all needs at least one automaton")
    if len(automata) == 1:
        return automata[0]
    if len(automata) == 2:
        return buchi_intersect(automata[0], automata[1])
    alphabet = automata[0].alphabet
    for other in automata[1:]:
        require_same(alphabet, other.alphabet)

    def successors(node):
        return _joint_edges(automata, node)

    start = tuple(a.initial for a in automata)
    _, order, transitions = explore(start, successors)
    acceptance = tuple(
        frozenset(i for i, node in enumerate(order) if node[k] in automaton.final)
        for k, automaton in enumerate(automata)
    )
    ts = TransitionSystem(alphabet, len(order), transitions)
    return GeneralizedBuchi(ts, 0, acceptance).degeneralize()
