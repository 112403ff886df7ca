"""
Presburger automata: an NFA paired with an existential Presburger formula
over the Parikh image of the accepted word.

Feasibility is decided with the flow encoding of Parikh images. Connectivity
of the flow is not expressible as a linear row, so it is handled by branch
and bound over transition supports: a relaxation without connectivity is
solved, and whenever the transitions it uses fall apart into several weak
components the search branches on an offending transition (forced in, or
forced out).
"""

from dataclasses import dataclass
from typing import Tuple

import networkx as nx

from src.automata.emptiness import nfa_run_exists
from src.automata.systems import Nfa
from src.core.errors import AlphabetError, SearchBudgetExceeded, WitnessError
from src.core.options import DEFAULT_OPTIONS
from src.debug.logger import log, log_search
from src.presburger.formula import EPFormula, eval_formula, make_row
from src.presburger.ilp import integer_feasible

LOGGER = "presburger.parikh"


@dataclass(frozen=True)
class PresburgerAutomaton:
    nfa: Nfa
    formula: EPFormula

    def __post_init__(self):
        if self.formula.free_count != len(self.nfa.alphabet):
            raise AlphabetError(
                f"formula has {self.formula.free_count} count variables but the alphabet has {len(self.nfa.alphabet)} symbols"
            )

    @property
    def alphabet(self):
        return self.nfa.alphabet


@dataclass(frozen=True)
class ParikhSolution:
    word: Tuple[int, ...]
    states: Tuple[int, ...]
    counts: Tuple[int, ...]
    bound_values: Tuple[int, ...]
    supports_tried: int = 0


def parikh_vector(word, size):
    counts = [0] * size
    for symbol in word:
        counts[symbol] += 1
    return tuple(counts)


def satisfying_bound_values(formula, counts, bound=None):
    """Bound-variable values making the formula true at the given Parikh vector, or None."""
    counts = tuple(counts)
    if formula.bound_count == 0:
        return () if eval_formula(formula, counts, ()) else None
    free = formula.free_count
    for branch in formula.dnf():
        rows = []
        for row in branch:
            rhs = row.rhs
            coefficients = []
            for var, coef in row.coefficients:
                if var < free:
                    rhs -= coef * counts[var]
                else:
                    coefficients.append((var - free, coef))
            rows.append(make_row(coefficients, row.sense, rhs))
        values = integer_feasible(rows, formula.bound_count, bound=bound)
        if values is not None:
            return values
    return None


def presburger_accepts(pa, word):
    """Membership of a finite word in L(pa)."""
    if not nfa_run_exists(pa.nfa, word):
        return False
    return satisfying_bound_values(pa.formula, parikh_vector(word, len(pa.alphabet))) is not None


def euler_walk(edge_counts, start):
    """Hierholzer's algorithm on a multigraph given as {(p, symbol, q): count}.

    Returns (states, word) of a walk using every edge exactly count times.
    Smallest (target, symbol) edges are taken first.
    """
    adjacency = {}
    for (p, a, q), count in edge_counts.items():
        adjacency.setdefault(p, []).extend([(q, a)] * count)
        adjacency.setdefault(q, [])
    for edges in adjacency.values():
        edges.sort(reverse=True)
    adjacency.setdefault(start, [])
    stack = [(start, None)]
    path = []
    while stack:
        state, _ = stack[-1]
        if adjacency[state]:
            target, a = adjacency[state].pop()
            stack.append((target, a))
        else:
            path.append(stack.pop())
    path.reverse()
    states = tuple(state for state, _ in path)
    word = tuple(a for _, a in path[1:])
    return states, word


def _core_edges(nfa, final, mentioned):
    """Transitions on some initial-to-final walk; parallel edges on unmentioned symbols collapse to one."""
    ts = nfa.ts
    core = ts.reachable([nfa.initial]) & ts.coreachable([final])
    if nfa.initial not in core:
        return []
    seen = set()
    edges = []
    for p, a, q in ts.sorted_transitions:
        if p not in core or q not in core:
            continue
        key = (p, q, a if a in mentioned else None)
        if key in seen:
            continue
        seen.add(key)
        edges.append((p, a, q))
    return edges


class _SupportSearch:
    """Branch and bound over transition supports for one final state and one DNF branch."""

    def __init__(self, pa, final, edges, branch, options):
        self.pa = pa
        self.final = final
        self.edges = edges
        self.branch = branch
        self.options = options
        self.formula_vars = pa.formula.var_count
        self.var_count = self.formula_vars + len(edges)
        self.rows = self._rows()
        self.nodes = 0

    def edge_var(self, i):
        return self.formula_vars + i

    def _rows(self):
        nfa = self.pa.nfa
        rows = list(self.branch)
        states = {p for p, _, _ in self.edges} | {q for _, _, q in self.edges} | {nfa.initial, self.final}
        for state in sorted(states):
            coefficients = []
            for i, (p, _, q) in enumerate(self.edges):
                if p == state:
                    coefficients.append((self.edge_var(i), 1))
                if q == state:
                    coefficients.append((self.edge_var(i), -1))
            balance = (1 if state == nfa.initial else 0) - (1 if state == self.final else 0)
            rows.append(make_row(coefficients, "==", balance))
        for var in sorted(self.pa.formula.mentioned_free()):
            coefficients = [(var, 1)] + [(self.edge_var(i), -1) for i, (_, a, _) in enumerate(self.edges) if a == var]
            rows.append(make_row(coefficients, "==", 0))
        return rows

    def _solve(self, included, excluded):
        lower = [None] * self.var_count
        upper = [None] * self.var_count
        for i in included:
            lower[self.edge_var(i)] = 1
        for i in excluded:
            upper[self.edge_var(i)] = 0
        return integer_feasible(self.rows, self.var_count, lower, upper, bound=self.options.ilp_bound)

    def _stray_edges(self, used):
        graph = nx.Graph()
        graph.add_node(self.pa.nfa.initial)
        for i in used:
            p, _, q = self.edges[i]
            graph.add_edge(p, q)
        component = nx.node_connected_component(graph, self.pa.nfa.initial)
        return [i for i in used if self.edges[i][0] not in component]

    def run(self):
        stack = [(frozenset(), frozenset())]
        while stack:
            included, excluded = stack.pop()
            self.nodes += 1
            if self.options.max_support is not None and self.nodes > self.options.max_support:
                raise SearchBudgetExceeded(f"more than {self.options.max_support} support nodes")
            values = self._solve(included, excluded)
            if values is None:
                continue
            used = [i for i in range(len(self.edges)) if values[self.edge_var(i)] > 0]
            stray = self._stray_edges(used)
            if not stray:
                return values, used
            decided = included | excluded
            candidates = [i for i in stray if i not in decided]
            if not candidates:
                candidates = [i for i in range(len(self.edges)) if i not in decided]
            if not candidates:
                continue
            pivot = candidates[0]
            stack.append((included | {pivot}, excluded))
            stack.append((included, excluded | {pivot}))
        return None


def parikh_solve(pa, options=DEFAULT_OPTIONS):
    """A word of L(pa) together with its Parikh vector and bound-variable witness, or None."""
    nfa = pa.nfa
    formula = pa.formula
    mentioned = formula.mentioned_free()
    branches = formula.dnf()
    supports = 0
    for final in sorted(nfa.finals):
        edges = _core_edges(nfa, final, mentioned)
        if not edges and nfa.initial != final:
            continue
        for branch in branches:
            search = _SupportSearch(pa, final, edges, branch, options)
            found = search.run()
            supports += search.nodes
            if found is None:
                continue
            values, used = found
            counts = {edges[i]: values[search.edge_var(i)] for i in used}
            states, word = euler_walk(counts, nfa.initial)
            parikh = parikh_vector(word, len(pa.alphabet))
            bound_values = tuple(values[formula.free_count:formula.var_count])
            if not nfa_run_exists(nfa, word) or not eval_formula(formula, parikh, bound_values):
                raise WitnessError(f"flow solution does not replay as a word: {word}")
            log_search("parikh", name=LOGGER, final=final, supports=supports, length=len(word))
            return ParikhSolution(word, states, parikh, bound_values, supports)
    log("[parikh] empty after %d support nodes", supports, name=LOGGER)
    return None


def parikh_feasible(pa, options=DEFAULT_OPTIONS):
    solution = parikh_solve(pa, options)
    return None if solution is None else solution.word


def brute_force_oracle(pa, max_len):
    """Shortest (then lexicographically least) word of length <= max_len in L(pa)."""
    size = len(pa.alphabet)
    ts = pa.nfa.ts
    cache = {}
    level = [((), frozenset([pa.nfa.initial]))]
    for length in range(max_len + 1):
        for word, states in level:
            if not states & pa.nfa.finals:
                continue
            counts = parikh_vector(word, size)
            if counts not in cache:
                cache[counts] = satisfying_bound_values(pa.formula, counts) is not None
            if cache[counts]:
                return word
        if length == max_len:
            break
        next_level = []
        for word, states in level:
            for symbol in range(size):
                successors = ts.step(states, symbol)
                if successors:
                    next_level.append((word + (symbol,), successors))
        level = next_level
    return None
