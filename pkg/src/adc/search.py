"""
Partition search for automata with data constraints.

A guess tags every class [S] (S a nonempty set of data letters) as Zero, Fin
or Inf (four-way mode splits Fin into FinSmall with explicit constants and
FinBig). For each guess the extended system is tried at every reachable
anchor state: the tail must be nonempty, then the finite part must satisfy the
Presburger side. Guesses come in a fixed order (fewer Inf classes first, then
fewer nonzero classes) so the first witness found is always the same.
"""

from collections import Counter
from itertools import combinations, product

import networkx as nx

from src.adc.extended import attempt_system, build_presburger_side, build_tail_buchi, local_epsilon, tail_banned
from src.adc.model import ClassTag, PartitionGuess, Verdict
from src.adc.witness import synthesize_witness, verify_witness_prefix
from src.automata.emptiness import accepting_components, buchi_nonempty
from src.core.constants import DEFAULT_UNROLL_FACTOR
from src.core.errors import PreconditionError, SearchBudgetExceeded, WitnessError
from src.core.options import DEFAULT_OPTIONS
from src.data.constraints import s_zero_of
from src.debug.logger import log, log_error, log_search
from src.presburger.parikh import parikh_solve
from src.utils.subsets import nonempty_subsets, subset_key

LOGGER = "adc.search"

ALGORITHM_AUTO = "auto"
ALGORITHM_GENERAL = "general"
ALGORITHM_KEYFREE = "keyfree"


class PartitionSearch:
    """Enumerates partition guesses for one automaton and tries them.

    data_symbols: letters whose positions carry values (all letters by default).
    four_way: locally different words (FinSmall / FinBig classes, constants).
    tail_extra: callable giving extra Büchi automata over the extended alphabet
        that every tail must also satisfy.
    inf_allowed: whether Inf classes may be guessed at all.
    verify: callable(recipe) -> bool run before a witness is accepted.
    """

    def __init__(self, automaton, constraints, data_symbols=None, four_way=False, options=DEFAULT_OPTIONS,
                 tail_extra=None, inf_allowed=True, verify=None, label="adc"):
        self.automaton = automaton
        self.constraints = constraints
        if data_symbols is None:
            data_symbols = range(len(automaton.alphabet))
        self.data = frozenset(data_symbols)
        self.four_way = four_way
        self.options = options
        self.tail_extra = tail_extra
        self.inf_allowed = inf_allowed
        self.verify = verify
        self.label = label
        self.s_zero = s_zero_of(constraints, self.data)
        self.counters = Counter()
        self._tails = {}
        self._scan()

    def _scan(self):
        """Letters on live transitions, and the letter sets of accepting components."""
        ts = self.automaton.ts
        components = accepting_components(self.automaton)
        self.cycle_letters = []
        self.live_letters = frozenset()
        if not components:
            return
        reach = ts.reachable([self.automaton.initial])
        live = reach & ts.coreachable(set().union(*components))
        self.live_letters = frozenset(a for p, a, q in ts.transitions if p in live and q in live)
        for component in components:
            self.cycle_letters.append(frozenset(a for p, a, q in ts.transitions if p in component and q in component))

    # -- candidate classes ------------------------------------------------

    def candidates(self):
        if not self.options.prune:
            return nonempty_subsets(self.data)
        usable = self.live_letters & self.data
        return [s for s in nonempty_subsets(usable) if s not in self.s_zero]

    def _fits_cycle(self, family):
        if not family:
            return True
        if not self.options.prune:
            return True
        letters = frozenset().union(*family)
        return any(letters <= cycle for cycle in self.cycle_letters)

    def _finite_options(self):
        if not self.four_way:
            return (ClassTag.FIN,)
        epsilon = local_epsilon(self.data)
        return tuple((ClassTag.FIN_SMALL, g) for g in range(1, epsilon)) + (ClassTag.FIN_BIG,)

    def _guess(self, inf_family, finite):
        tags = [(s, ClassTag.INF) for s in inf_family]
        gamma = []
        for subset, option in finite:
            if isinstance(option, tuple):
                tags.append((subset, option[0]))
                gamma.append((subset, option[1]))
            else:
                tags.append((subset, option))
        return PartitionGuess(self.data, tuple(tags), tuple(gamma), self.four_way)

    def _finite_assignments(self, rest):
        options = self._finite_options()
        for size in range(len(rest) + 1):
            for chosen in combinations(rest, size):
                for combo in product(options, repeat=size):
                    yield list(zip(chosen, combo))

    def _families(self, candidates):
        sizes = range(len(candidates) + 1) if self.inf_allowed else range(1)
        for size in sizes:
            for family in combinations(candidates, size):
                if self._fits_cycle(family):
                    yield family

    def general_guesses(self):
        candidates = self.candidates()
        for family in self._families(candidates):
            rest = [s for s in candidates if s not in family]
            for finite in self._finite_assignments(rest):
                yield self._guess(family, finite)

    def keyfree_guesses(self):
        """Guesses whose nonzero classes are the image of a map f with a in f(a)."""
        candidates = self.candidates()
        images = [image for size in range(len(self.data) + 1) for image in combinations(candidates, size) if _has_representatives(image)]
        ordered = []
        for image in images:
            for size in range(len(image) + 1):
                if not self.inf_allowed and size:
                    break
                for family in combinations(image, size):
                    if self._fits_cycle(family):
                        ordered.append((len(family), len(image), family, image))
        ordered.sort(key=lambda item: (item[0], item[1], [subset_key(s) for s in item[3]], [subset_key(s) for s in item[2]]))
        for _, _, family, image in ordered:
            finite = [(s, ClassTag.FIN) for s in image if s not in family]
            yield self._guess(family, finite)

    # -- probing ----------------------------------------------------------

    def _charge(self):
        self.counters["attempts"] += 1
        limit = self.options.max_attempts
        if limit is not None and self.counters["attempts"] > limit:
            raise SearchBudgetExceeded(f"more than {limit} attempts")

    def attempt(self, partition):
        """Witness recipe for this guess, or None."""
        system = attempt_system(self.automaton, partition)
        banned = tail_banned(system.extended, partition, self.constraints)
        key = (tuple(partition.inf_classes), partition.gamma, banned)
        if key not in self._tails:
            extra = tuple(self.tail_extra(system.extended)) if self.tail_extra else ()
            self._tails[key] = (extra, {})
        extra, tails = self._tails[key]
        for q in sorted(system.ts.reachable([system.initial])):
            if q not in tails:
                self._charge()
                tails[q] = buchi_nonempty(build_tail_buchi(system, q, partition, self.constraints, extra))
            lasso = tails[q]
            if lasso is None:
                continue
            self._charge()
            self.counters["presburger"] += 1
            solution = parikh_solve(build_presburger_side(system, q, partition, self.constraints), self.options)
            if solution is None:
                continue
            self.counters["supports"] += solution.supports_tried
            try:
                recipe = synthesize_witness(
                    partition, system.extended, solution.word, lasso.prefix_word, lasso.cycle_word,
                    solution.bound_values, self.constraints, locally_different=self.four_way, anchor=q,
                )
            except WitnessError as error:
                log_error("discarding witness", error, name=LOGGER)
                continue
            if self.verify is not None and not self.verify(recipe):
                log_error(f"witness for {partition.describe(self.automaton.alphabet)} failed verification", name=LOGGER)
                continue
            return recipe
        return None

    def stats(self, partition=None):
        stats = {
            "algorithm": self.label,
            "partitions": self.counters["partitions"],
            "attempts": self.counters["attempts"],
            "presburger": self.counters["presburger"],
            "supports": self.counters["supports"],
        }
        if partition is not None:
            stats["partition"] = partition.describe(self.automaton.alphabet)
        return stats

    def run(self, guesses):
        for partition in guesses:
            self.counters["partitions"] += 1
            if any(s in self.s_zero for s in partition.nonzero_classes):
                continue
            recipe = self.attempt(partition)
            if recipe is not None:
                log_search(self.label, name=LOGGER, **self.stats())
                return Verdict(True, recipe, self.stats(partition))
        log_search(self.label, name=LOGGER, **self.stats())
        return Verdict(False, None, self.stats())


def _has_representatives(image):
    """Distinct letters a_S in S for every S of the family."""
    if not image:
        return True
    graph = nx.Graph()
    top = [("class", i) for i in range(len(image))]
    graph.add_nodes_from(top)
    for i, subset in enumerate(image):
        for a in subset:
            graph.add_edge(("class", i), ("letter", a))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    return all(node in matching for node in top)


def prefix_verifier(adc):
    def verify(recipe):
        n = DEFAULT_UNROLL_FACTOR * (len(recipe.u) + len(recipe.v))
        report = verify_witness_prefix(recipe, n, adc)
        if not report.passed:
            log("failed checks: %s", [c.name for c in report.failures()], name=LOGGER)
        return report.passed

    return verify


def adc_nonempty(adc, algorithm=ALGORITHM_AUTO, options=DEFAULT_OPTIONS):
    """Emptiness of an automaton with data constraints.

    ``auto`` uses the key-free search when no key constraint is present.
    """
    if algorithm == ALGORITHM_AUTO:
        algorithm = ALGORITHM_GENERAL if adc.constraints.has_keys() else ALGORITHM_KEYFREE
    if algorithm == ALGORITHM_KEYFREE:
        return adc_nonempty_keyfree(adc, options)
    if algorithm != ALGORITHM_GENERAL:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    search = PartitionSearch(adc.automaton, adc.constraints, options=options, verify=prefix_verifier(adc), label=ALGORITHM_GENERAL)
    return search.run(search.general_guesses())


def adc_nonempty_keyfree(adc, options=DEFAULT_OPTIONS):
    if adc.constraints.has_keys():
        raise PreconditionError("the key-free search does not accept key constraints")
    search = PartitionSearch(adc.automaton, adc.constraints, options=options, verify=prefix_verifier(adc), label=ALGORITHM_KEYFREE)
    return search.run(search.keyfree_guesses())
