"""Emptiness, lasso extraction and membership for Büchi automata and NFAs."""

from collections import deque

import networkx as nx

from src.automata.systems import Lasso


def _nontrivial(graph, component):
    if len(component) > 1:
        return True
    (state,) = component
    return graph.has_edge(state, state)


def accepting_components(automaton):
    """Reachable SCCs that contain a final state and at least one edge."""
    ts = automaton.ts
    reach = ts.reachable([automaton.initial])
    sub = ts.graph.subgraph(reach)
    found = []
    for component in nx.strongly_connected_components(sub):
        if _nontrivial(sub, component) and component & automaton.final:
            found.append(frozenset(component))
    return found


def _bfs(ts, source, targets, allowed, at_least_one=False):
    """Shortest path as a list of (state, symbol) steps; ties broken by target then symbol index."""
    parent = {}
    queue = deque()
    if not at_least_one:
        if source in targets:
            return []
        parent[source] = None
        queue.append(source)
    else:
        for a, q in ts.out_edges[source]:
            if q in allowed and q not in parent:
                parent[q] = (source, a)
                if q in targets:
                    return _unwind(parent, q, source, at_least_one)
                queue.append(q)
    while queue:
        state = queue.popleft()
        for a, q in ts.out_edges[state]:
            if q not in allowed or q in parent:
                continue
            parent[q] = (state, a)
            if q in targets:
                return _unwind(parent, q, source, at_least_one)
            queue.append(q)
    return None


def _unwind(parent, node, source, at_least_one):
    steps = []
    while True:
        previous = parent[node]
        if previous is None:
            break
        state, a = previous
        steps.append((state, a))
        node = state
        if at_least_one and node == source:
            break
    steps.reverse()
    return steps


def buchi_nonempty(automaton):
    """A lasso witnessing a nonempty language, or None when the language is empty."""
    components = accepting_components(automaton)
    if not components:
        return None
    target = min(state for component in components for state in component & automaton.final)
    component = next(c for c in components if target in c)
    ts = automaton.ts
    reach = ts.reachable([automaton.initial])
    prefix = _bfs(ts, automaton.initial, {target}, reach)
    cycle = _bfs(ts, target, {target}, component, at_least_one=True)
    return Lasso(
        prefix_states=tuple(state for state, _ in prefix),
        prefix_word=tuple(a for _, a in prefix),
        cycle_states=tuple(state for state, _ in cycle),
        cycle_word=tuple(a for _, a in cycle),
    )


def buchi_accepts_lasso(automaton, prefix_word, cycle_word):
    """Membership of the ultimately periodic word prefix_word . cycle_word^omega."""
    word = tuple(prefix_word) + tuple(cycle_word)
    if not cycle_word:
        return False
    loop_start = len(prefix_word)
    n = len(word)
    ts = automaton.ts
    graph = nx.DiGraph()
    start = (automaton.initial, 0)
    graph.add_node(start)
    stack = [start]
    while stack:
        state, pos = stack.pop()
        next_pos = pos + 1 if pos + 1 < n else loop_start
        for a, q in ts.out_edges[state]:
            if a != word[pos]:
                continue
            node = (q, next_pos)
            if node not in graph:
                graph.add_node(node)
                stack.append(node)
            graph.add_edge((state, pos), node)
    for component in nx.strongly_connected_components(graph):
        if not _nontrivial(graph, component):
            continue
        if any(state in automaton.final for state, _ in component):
            return True
    return False


def nfa_run_exists(nfa, word):
    states = frozenset([nfa.initial])
    for symbol in word:
        states = nfa.ts.step(states, symbol)
        if not states:
            return False
    return bool(states & nfa.finals)
